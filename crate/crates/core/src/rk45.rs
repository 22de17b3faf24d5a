//! Embedded Runge-Kutta-Fehlberg 4(5) integrator with adaptive step control.
//!
//! Small and self-contained: dense output is not needed anywhere in this
//! crate, only solution values at accepted steps (plus an exact landing on
//! the end point), so the classic six-stage Fehlberg pair is enough. The
//! fifth-order solution is propagated; the embedded fourth-order result
//! drives the error estimate.

use crate::error::{GeomError, Result};

/// Default integrator tolerance (used as both absolute and relative weight).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Hard cap on attempted steps per integration.
pub const MAX_STEPS: usize = 1_000_000;

// Fehlberg tableau.
const A2: [f64; 1] = [1.0 / 4.0];
const A3: [f64; 2] = [3.0 / 32.0, 9.0 / 32.0];
const A4: [f64; 3] = [1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0];
const A5: [f64; 4] = [439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0];
const A6: [f64; 5] = [
    -8.0 / 27.0,
    2.0,
    -3544.0 / 2565.0,
    1859.0 / 4104.0,
    -11.0 / 40.0,
];
const B5: [f64; 6] = [
    16.0 / 135.0,
    0.0,
    6656.0 / 12825.0,
    28561.0 / 56430.0,
    -9.0 / 50.0,
    2.0 / 55.0,
];
const B4: [f64; 6] = [
    25.0 / 216.0,
    0.0,
    1408.0 / 2565.0,
    2197.0 / 4104.0,
    -1.0 / 5.0,
    0.0,
];
const C: [f64; 6] = [0.0, 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0];

/// One accepted integrator step.
#[derive(Debug, Clone, Copy)]
pub struct Step<const N: usize> {
    pub x: f64,
    pub y: [f64; N],
    /// Scaled embedded error estimate of the step that produced this state
    /// (0 for the initial sample).
    pub error_estimate: f64,
}

fn axpy<const N: usize>(y: &[f64; N], coeffs: &[f64], ks: &[[f64; N]], h: f64) -> [f64; N] {
    let mut out = *y;
    for (c, k) in coeffs.iter().zip(ks.iter()) {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrates `dy/dx = rhs(x, y)` from `x0` to `x1` (either direction),
/// recording every accepted step. The first sample is the initial state,
/// the last lands exactly on `x1`.
pub fn integrate<const N: usize>(
    rhs: impl FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    x0: f64,
    y0: [f64; N],
    x1: f64,
    tol: f64,
) -> Result<Vec<Step<N>>> {
    integrate_guarded(rhs, x0, y0, x1, tol, |_, _| Ok(()))
}

/// [`integrate`] with a per-step guard: after each accepted step the guard
/// sees the previous and the new sample and may abort the integration by
/// returning an error.
pub fn integrate_guarded<const N: usize>(
    mut rhs: impl FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    x0: f64,
    y0: [f64; N],
    x1: f64,
    tol: f64,
    mut on_accept: impl FnMut(&Step<N>, &Step<N>) -> Result<()>,
) -> Result<Vec<Step<N>>> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(GeomError::Domain(format!(
            "integrator tol = {tol} must be > 0"
        )));
    }
    let mut out = vec![Step {
        x: x0,
        y: y0,
        error_estimate: 0.0,
    }];
    if x0 == x1 {
        return Ok(out);
    }
    let dir = (x1 - x0).signum();
    let span = (x1 - x0).abs();
    let mut x = x0;
    let mut y = y0;
    let mut h = dir * (span / 100.0).min(0.1).max(1e-6 * span);

    let mut steps = 0usize;
    while (x1 - x) * dir > 0.0 {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(GeomError::ToleranceNotMet {
                tol,
                detail: format!("step budget {MAX_STEPS} exhausted at x = {x}"),
            });
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        if h.abs() < 1e-14 * x.abs().max(1.0) {
            return Err(GeomError::ToleranceNotMet {
                tol,
                detail: format!("step size underflow at x = {x}"),
            });
        }

        let k1 = rhs(x, &y)?;
        let k2 = rhs(x + C[1] * h, &axpy(&y, &A2, &[k1], h))?;
        let k3 = rhs(x + C[2] * h, &axpy(&y, &A3, &[k1, k2], h))?;
        let k4 = rhs(x + C[3] * h, &axpy(&y, &A4, &[k1, k2, k3], h))?;
        let k5 = rhs(x + C[4] * h, &axpy(&y, &A5, &[k1, k2, k3, k4], h))?;
        let k6 = rhs(x + C[5] * h, &axpy(&y, &A6, &[k1, k2, k3, k4, k5], h))?;
        let ks = [k1, k2, k3, k4, k5, k6];

        let y5 = axpy(&y, &B5, &ks, h);
        let y4 = axpy(&y, &B4, &ks, h);

        let mut err2 = 0.0;
        for i in 0..N {
            let scale = tol + tol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4[i]) / scale;
            err2 += e * e;
        }
        let err_norm = (err2 / N as f64).sqrt();

        if err_norm <= 1.0 {
            let prev = *out.last().expect("at least the initial sample");
            x += h;
            y = y5;
            let step = Step {
                x,
                y,
                error_estimate: err_norm * tol,
            };
            on_accept(&prev, &step)?;
            out.push(step);
        }
        let factor = if err_norm > 0.0 {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }
    Ok(out)
}

/// Integrates through a list of checkpoints (strictly monotone, starting
/// after `x0`), returning the state at each checkpoint only. Internally
/// adaptive; steps never cross a checkpoint.
pub fn integrate_to_checkpoints<const N: usize>(
    mut rhs: impl FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    x0: f64,
    y0: [f64; N],
    checkpoints: &[f64],
    tol: f64,
) -> Result<Vec<Step<N>>> {
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut x = x0;
    let mut y = y0;
    for &cp in checkpoints {
        let seg = integrate(&mut rhs, x, y, cp, tol)?;
        let last = *seg.last().expect("integrate returns at least one sample");
        out.push(last);
        x = last.x;
        y = last.y;
    }
    Ok(out)
}
