//! Natural-coordinate machinery connecting helicoidal and rotational
//! surfaces of value m.
//!
//! Curves orthogonal to the helices `r = const` satisfy `F dr + G dtheta = 0`;
//! along them `theta_bar = theta + int(F/G) dr` is constant and the line
//! element reduces to `(Q/G) dr^2 + G dtheta_bar^2` with `Q = det I`. Setting
//! `rbar = int sqrt(Q/G) dr` and `k(rbar) = sqrt(G)` puts the metric into the
//! semi-geodesic shape `drbar^2 + k^2 dtheta_bar^2`, from which the
//! correspondence `r_R = sqrt(G)`, `theta_R = theta_bar` onto a rotational
//! surface is read off and the square of the rotational height derivative is
//! given by a closed formula.
//!
//! All quantities here are evaluated along orthogonal trajectories, where
//! the reduction is well-defined. The isometry examination never asserts:
//! it tabulates both sides under the correspondence and reports the
//! discrepancies as data.

use crate::diffgeo::{self, DEGENERACY_EPS};
use crate::error::{GeomError, Result};
use crate::rk45;
use crate::surfaces::{ProfileSpec, SurfaceFamily, SurfaceSpec};
use serde::Serialize;
use std::io::{self, Write};

/// Threshold below which the slice ODE's leading coefficient counts as
/// singular.
pub const SINGULAR_COEFF_EPS: f64 = 1e-10;

/// A point along an orthogonal trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub r: f64,
    /// Trajectory angle `theta(r)`.
    pub theta: f64,
    /// Accumulated natural radius `int sqrt(det I / G) dr` from the start.
    pub rbar: f64,
    /// Conserved quantity `theta + int (F/G) dr`; constant along the
    /// trajectory up to integrator tolerance.
    pub theta_bar: f64,
    /// Local error estimate of the accepting integrator step.
    pub step_error: f64,
}

/// The metric after removing the cross term with
/// `dtheta = dtheta_bar - (F/G) dr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedMetric {
    /// Coefficient of `dr^2` after reduction, `E - F^2/G` (equals `det I / G`).
    pub err_rr: f64,
    /// Coefficient of `dtheta_bar^2` (unchanged `G`).
    pub g_tt: f64,
    /// Residual mixed coefficient; an exact algebraic zero, kept as the
    /// floating-point residue `2F - 2G(F/G)`.
    pub cross: f64,
}

/// Applies the cross-term-removing substitution to `E dr^2 + 2F dr dtheta
/// + G dtheta^2`.
pub fn reduce_metric(e: f64, f: f64, g: f64) -> Result<ReducedMetric> {
    if g <= DEGENERACY_EPS {
        return Err(GeomError::DegenerateMetric { det_i: g });
    }
    let ratio = f / g;
    Ok(ReducedMetric {
        err_rr: e - f * ratio,
        g_tt: g,
        cross: 2.0 * f - 2.0 * g * ratio,
    })
}

/// First-form coefficients of any family at a parameter point, via the
/// analytic jet.
fn metric_at(spec: &SurfaceSpec, r: f64, theta: f64) -> Result<(f64, f64, f64)> {
    let j = spec.jet(r, theta)?;
    Ok(diffgeo::first_form_from_jet(&j))
}

/// Traces the orthogonal trajectory `dtheta/dr = -F/G` from `(r0, theta0)`
/// to `r1`, accumulating the natural radius `rbar` and the conserved
/// `theta_bar` on the way. Samples are the integrator's accepted steps.
pub fn trace_orthogonal(
    spec: &SurfaceSpec,
    r0: f64,
    theta0: f64,
    r1: f64,
    tol: f64,
) -> Result<Vec<TrajectorySample>> {
    let (samples, failure) = trace_partial(spec, r0, theta0, r1, tol);
    match failure {
        None => Ok(samples),
        Some((err, _)) => Err(err),
    }
}

/// Like [`trace_orthogonal`] but returns whatever was integrated before a
/// failure, together with the failure and the radius where it happened.
/// Reporting code uses this to truncate instead of aborting.
fn trace_partial(
    spec: &SurfaceSpec,
    r0: f64,
    theta0: f64,
    r1: f64,
    tol: f64,
) -> (Vec<TrajectorySample>, Option<(GeomError, f64)>) {
    if r0 <= 0.0 || r1 <= 0.0 {
        return (
            Vec::new(),
            Some((
                GeomError::Domain(format!("trajectory radii ({r0}, {r1}) must be > 0")),
                r0,
            )),
        );
    }
    let fail_r = std::cell::Cell::new(r0);
    let guarded = |r: f64, y: &[f64; 3]| -> Result<[f64; 3]> {
        let theta = y[0];
        let (e, f, g) = metric_at(spec, r, theta)?;
        let det = e * g - f * f;
        if g <= DEGENERACY_EPS || det <= DEGENERACY_EPS {
            fail_r.set(r);
            return Err(GeomError::DegenerateMetric { det_i: det });
        }
        Ok([-f / g, (det / g).sqrt(), f / g])
    };
    // isolated zeros of det I can hide between integrator evaluations, so
    // every accepted step additionally gets a dip-localizing scan
    let on_accept = |prev: &rk45::Step<3>, step: &rk45::Step<3>| {
        segment_degeneracy_check(spec, (prev.x, prev.y[0]), (step.x, step.y[0])).map_err(
            |(err, r)| {
                fail_r.set(r);
                err
            },
        )
    };
    match rk45::integrate_guarded(&guarded, r0, [theta0, 0.0, 0.0], r1, tol, on_accept) {
        Ok(steps) => (to_samples(&steps), None),
        Err(err) => {
            // integrate() never returns partial output; re-run up to the
            // last radius known to be safe so the report can truncate there.
            let failed_at = fail_r.get();
            let safe_r1 = if (failed_at - r0).abs() > 1e-9 {
                r0 + 0.995 * (failed_at - r0)
            } else {
                r0
            };
            let partial = rk45::integrate(&guarded, r0, [theta0, 0.0, 0.0], safe_r1, tol)
                .map(|s| to_samples(&s))
                .unwrap_or_else(|_| {
                    vec![TrajectorySample {
                        r: r0,
                        theta: theta0,
                        rbar: 0.0,
                        theta_bar: theta0,
                        step_error: 0.0,
                    }]
                });
            (partial, Some((err, failed_at)))
        }
    }
}

/// Scans one accepted step for an interior minimum of `min(det I, G)`
/// (theta interpolated linearly, which is accurate enough for a guard) and
/// refines any dip found; reports the failure radius alongside the error.
fn segment_degeneracy_check(
    spec: &SurfaceSpec,
    a: (f64, f64),
    b: (f64, f64),
) -> std::result::Result<(), (GeomError, f64)> {
    let value_at = |s: f64| -> std::result::Result<(f64, f64), (GeomError, f64)> {
        let r = a.0 + (b.0 - a.0) * s;
        let theta = a.1 + (b.1 - a.1) * s;
        let (e, f, g) = metric_at(spec, r, theta).map_err(|err| (err, r))?;
        Ok(((e * g - f * f).min(g), r))
    };
    const PROBES: usize = 6;
    let mut min_s = 0.0;
    let mut min_v = f64::INFINITY;
    for k in 0..=PROBES {
        let s = k as f64 / PROBES as f64;
        let (v, r) = value_at(s)?;
        if v <= DEGENERACY_EPS {
            return Err((GeomError::DegenerateMetric { det_i: v }, r));
        }
        if v < min_v {
            min_v = v;
            min_s = s;
        }
    }
    // refine around the lowest probe; the true dip may sit between probes
    let width = 1.0 / PROBES as f64;
    let (mut lo, mut hi) = ((min_s - width).max(0.0), (min_s + width).min(1.0));
    for _ in 0..90 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if value_at(m1)?.0 < value_at(m2)?.0 {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let (v, r) = value_at(0.5 * (lo + hi))?;
    if v <= DEGENERACY_EPS {
        return Err((GeomError::DegenerateMetric { det_i: v }, r));
    }
    Ok(())
}

fn to_samples(steps: &[rk45::Step<3>]) -> Vec<TrajectorySample> {
    steps
        .iter()
        .map(|s| TrajectorySample {
            r: s.x,
            theta: s.y[0],
            rbar: s.y[1],
            theta_bar: s.y[0] + s.y[2],
            step_error: s.error_estimate,
        })
        .collect()
}

/// The correspondence onto the rotational partner: `r_R = sqrt(G)` at the
/// trajectory point, `theta_R = theta_bar` of the trajectory.
pub fn correspondence(spec: &SurfaceSpec, at: &TrajectorySample) -> Result<(f64, f64)> {
    let (_, _, g) = metric_at(spec, at.r, at.theta)?;
    if g <= DEGENERACY_EPS {
        return Err(GeomError::DegenerateMetric { det_i: g });
    }
    Ok((g.sqrt(), at.theta_bar))
}

fn value_parameter(spec: &SurfaceSpec) -> Result<f64> {
    match spec.family {
        SurfaceFamily::ClassicalHelicoid => Err(GeomError::Domain(
            "the correspondence formulas need a value-m family".to_string(),
        )),
        _ => Ok(spec.m),
    }
}

/// The bracket `2(m+1) r^(2m+1) + 4m r^(2m-1) cos(2mt)` shared by the
/// height formula and the printed `dr_R` substitution.
fn correspondence_bracket(m: f64, r: f64, theta: f64) -> f64 {
    2.0 * (m + 1.0) * r.powf(2.0 * m + 1.0)
        + 4.0 * m * r.powf(2.0 * m - 1.0) * (2.0 * m * theta).cos()
}

/// The three-term closed formula for the squared derivative of the
/// rotational height, evaluated verbatim: first term carries `det I` and `G`
/// of the helicoidal side at the trajectory point, second and third terms
/// are functions of the rotational arguments `(r_R, theta_R)`.
///
/// Negativity is not an error here; the caller flags non-realizable
/// stretches in its report.
pub fn phi_r_prime_squared(
    spec: &SurfaceSpec,
    at: &TrajectorySample,
    corresponding: (f64, f64),
) -> Result<f64> {
    let m = value_parameter(spec)?;
    let (r_rot, theta_rot) = corresponding;
    let (e, f, g) = metric_at(spec, at.r, at.theta)?;
    let det = e * g - f * f;

    let denom = correspondence_bracket(m, at.r, at.theta).powi(2) * g;
    if denom.abs() <= 1e-12 {
        return Err(GeomError::DivisionByZero {
            what: "phi_R'^2 first-term denominator",
        });
    }
    let term1 = correspondence_bracket(m, r_rot, theta_rot).powi(2) * det / denom;

    let c = (2.0 * m * theta_rot).cos();
    let s = (2.0 * m * theta_rot).sin();
    let rr2 = r_rot * r_rot;
    let rr4 = rr2 * rr2;
    let denom2 = rr4 + 2.0 * rr2 * c + 1.0;
    if denom2.abs() <= 1e-12 {
        return Err(GeomError::DivisionByZero {
            what: "phi_R'^2 second-term denominator",
        });
    }
    let term2 = 2.0 * r_rot.powf(2.0 * m) * s * s / denom2;
    let term3 = r_rot.powf(2.0 * m - 4.0) * (rr4 - 2.0 * rr2 * c + 1.0);
    Ok(term1 + term2 - term3)
}

/// How the rotational side of an isometry examination gets its height.
#[derive(Debug, Clone)]
pub enum RotationalHeight {
    /// Derive `phi_R'^2` from the closed correspondence formula along the
    /// traced trajectory (the default reading).
    ClosedForm,
    /// Use an explicit height profile; the rotational side then traces its
    /// own orthogonal trajectory from the same start, pairing points with
    /// equal `r` (the identity correspondence).
    Profile(ProfileSpec),
}

/// One tabulated row of the isometry examination.
#[derive(Debug, Clone, Copy)]
pub struct IsometryRow {
    pub r: f64,
    pub theta: f64,
    pub rbar: f64,
    /// Rotational-side radius paired with this sample.
    pub r_rot: f64,
    /// Rotational-side angle paired with this sample.
    pub theta_rot: f64,
    /// `sqrt(G)` on the helicoidal side.
    pub k: f64,
    /// `sqrt(G_R)` on the rotational side at `(r_rot, theta_rot)`.
    pub k_rot: f64,
    /// Squared rotational height derivative attributed to this sample.
    pub phi_r_prime_sq: f64,
    /// False where `phi_r_prime_sq < 0` (or could not be evaluated).
    pub realizable: bool,
    /// Natural radius accumulated on the rotational side.
    pub rbar_rot: f64,
    /// Reconstructed height `int sqrt(max(phi_R'^2, 0)) dr_R`.
    pub phi_r: f64,
    /// Residual of the printed `dr_R` substitution over the step ending at
    /// this sample: `|bracket(r_R) dr_R - bracket(r) dr|` relative to the
    /// step's `|bracket(r) dr|`. A consistency check on the correspondence
    /// Jacobian, recorded rather than asserted; 0 on the first row.
    pub jacobian_residual: f64,
    /// True only for a trailing truncation marker row.
    pub degenerate: bool,
}

/// Aggregate outcome of [`isometry_report`]. A report, not an assertion:
/// the discrepancy fields quantify how far the tabulated sides are from
/// agreeing, whatever that turns out to be.
#[derive(Debug, Clone)]
pub struct IsometryReport {
    pub rows: Vec<IsometryRow>,
    pub theta_bar: f64,
    pub max_k_discrepancy: f64,
    pub max_rbar_discrepancy: f64,
    pub max_jacobian_residual: f64,
    pub not_realizable: usize,
    /// Why the sweep stopped early, if it did.
    pub truncated: Option<String>,
}

#[derive(Serialize)]
struct IsometrySummary {
    samples: usize,
    theta_bar: f64,
    max_abs_k_discrepancy: f64,
    max_abs_rbar_discrepancy: f64,
    max_jacobian_residual: f64,
    not_realizable_rows: usize,
    phi_r_final: Option<f64>,
    truncated: Option<String>,
}

impl IsometryReport {
    /// CSV with the fixed column set
    /// `r,theta,rbar,r_R,theta_R,k,k_R,phiR_prime_sq,realizable`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "r,theta,rbar,r_R,theta_R,k,k_R,phiR_prime_sq,realizable")?;
        for row in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                fmt(row.r),
                fmt(row.theta),
                fmt(row.rbar),
                fmt(row.r_rot),
                fmt(row.theta_rot),
                fmt(row.k),
                fmt(row.k_rot),
                fmt(row.phi_r_prime_sq),
                if row.realizable { 1 } else { 0 },
            )?;
        }
        Ok(())
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let phi_r_final = self
            .rows
            .iter()
            .rev()
            .find(|r| !r.degenerate)
            .map(|r| r.phi_r)
            .filter(|v| v.is_finite());
        serde_json::to_value(IsometrySummary {
            samples: self.rows.len(),
            theta_bar: self.theta_bar,
            max_abs_k_discrepancy: self.max_k_discrepancy,
            max_abs_rbar_discrepancy: self.max_rbar_discrepancy,
            max_jacobian_residual: self.max_jacobian_residual,
            not_realizable_rows: self.not_realizable,
            phi_r_final,
            truncated: self.truncated.clone(),
        })
        .expect("summary serializes")
    }
}

fn fmt(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v}")
    }
}

/// Rotational-side first form at `(r_rot, theta_rot)` given a squared
/// height derivative: same trigonometric structure with pitch 0.
fn rotational_forms(m: f64, r_rot: f64, theta_rot: f64, phi_sq: f64) -> (f64, f64, f64) {
    let c = (2.0 * m * theta_rot).cos();
    let s = (2.0 * m * theta_rot).sin();
    let rr2 = r_rot * r_rot;
    let rr4 = rr2 * rr2;
    let e = r_rot.powf(2.0 * m - 4.0) * (rr4 - 2.0 * rr2 * c + 1.0) + phi_sq;
    let f = 2.0 * r_rot.powf(2.0 * m - 1.0) * s;
    let g = r_rot.powf(2.0 * m - 2.0) * (rr4 + 2.0 * rr2 * c + 1.0);
    (e, f, g)
}

/// Tabulates both sides of the correspondence along one orthogonal
/// trajectory and records the per-sample discrepancies. Degenerate-metric
/// failures truncate the table with a marker row instead of aborting.
pub fn isometry_report(
    spec: &SurfaceSpec,
    r0: f64,
    theta0: f64,
    r1: f64,
    tol: f64,
    rotational: &RotationalHeight,
) -> Result<IsometryReport> {
    let m = value_parameter(spec)?;
    let (samples, failure) = trace_partial(spec, r0, theta0, r1, tol);
    if samples.is_empty() {
        let (err, _) = failure.expect("empty trace implies failure");
        return Err(err);
    }
    let theta_bar = samples[0].theta_bar;

    // Profile mode: trace the rotational side's own trajectory through the
    // same radii so rows pair points with equal r.
    let own_trace: Option<Vec<rk45::Step<3>>> = match rotational {
        RotationalHeight::Profile(profile) => {
            let rot_spec = SurfaceSpec::rotational(m, profile.clone())?;
            let checkpoints: Vec<f64> = samples.iter().skip(1).map(|s| s.r).collect();
            let rhs = |r: f64, y: &[f64; 3]| -> Result<[f64; 3]> {
                let (e, f, g) = metric_at(&rot_spec, r, y[0])?;
                let det = e * g - f * f;
                if g <= DEGENERACY_EPS || det <= DEGENERACY_EPS {
                    return Err(GeomError::DegenerateMetric { det_i: det });
                }
                Ok([-f / g, (det / g).sqrt(), f / g])
            };
            Some({
                let mut full = vec![rk45::Step {
                    x: r0,
                    y: [theta0, 0.0, 0.0],
                    error_estimate: 0.0,
                }];
                full.extend(rk45::integrate_to_checkpoints(
                    rhs,
                    r0,
                    [theta0, 0.0, 0.0],
                    &checkpoints,
                    tol,
                )?);
                full
            })
        }
        RotationalHeight::ClosedForm => None,
    };

    let mut rows: Vec<IsometryRow> = Vec::with_capacity(samples.len());
    let mut max_k = 0.0f64;
    let mut max_rbar = 0.0f64;
    let mut max_jacobian = 0.0f64;
    let mut not_realizable = 0usize;
    let mut rbar_rot_acc = 0.0f64;
    let mut phi_r_acc = 0.0f64;
    let mut prev: Option<(f64, f64, f64)> = None; // (r_rot, integrand, phi integrand)
    let mut prev_point: Option<(f64, f64, f64)> = None; // (r, theta, r_rot)

    for (i, s) in samples.iter().enumerate() {
        let (_, _, g) = metric_at(spec, s.r, s.theta)?;
        let k = g.sqrt();
        let (corr_r, corr_t) = (g.sqrt(), theta_bar);

        let (r_rot, theta_rot, phi_sq) = match rotational {
            RotationalHeight::ClosedForm => {
                let phi_sq = phi_r_prime_squared(spec, s, (corr_r, corr_t)).unwrap_or(f64::NAN);
                (corr_r, corr_t, phi_sq)
            }
            RotationalHeight::Profile(profile) => {
                let own = &own_trace.as_ref().expect("profile mode traced")[i];
                let d1 = profile.d1(own.x);
                (own.x, own.y[0], d1 * d1)
            }
        };

        let (e_r, f_r, g_r) = rotational_forms(m, r_rot, theta_rot, phi_sq);
        let k_rot = g_r.sqrt();
        let q_r = e_r * g_r - f_r * f_r;
        let integrand = if g_r > 0.0 {
            (q_r / g_r).sqrt()
        } else {
            f64::NAN
        };
        let phi_integrand = phi_sq.max(0.0).sqrt();

        match rotational {
            RotationalHeight::ClosedForm => {
                if let Some((prev_r, prev_int, prev_phi)) = prev {
                    let dr = r_rot - prev_r;
                    rbar_rot_acc += 0.5 * (prev_int + integrand) * dr;
                    phi_r_acc += 0.5 * (prev_phi + phi_integrand) * dr;
                }
                prev = Some((r_rot, integrand, phi_integrand));
            }
            RotationalHeight::Profile(_) => {
                let own = &own_trace.as_ref().expect("profile mode traced")[i];
                rbar_rot_acc = own.y[1];
                if let Some((prev_r, _, prev_phi)) = prev {
                    phi_r_acc += 0.5 * (prev_phi + phi_integrand) * (r_rot - prev_r);
                }
                prev = Some((r_rot, integrand, phi_integrand));
            }
        }

        let realizable = phi_sq.is_finite() && phi_sq >= 0.0;
        if !realizable {
            not_realizable += 1;
        }
        if k_rot.is_finite() {
            max_k = max_k.max((k - k_rot).abs());
        }
        if rbar_rot_acc.is_finite() {
            max_rbar = max_rbar.max((s.rbar - rbar_rot_acc).abs());
        }

        // printed dr_R substitution as a discrete Jacobian check:
        // bracket(r_R) dr_R against bracket(r) dr over the step, midpoint
        // evaluation on both sides
        let jacobian_residual = match prev_point {
            None => 0.0,
            Some((pr, pt, prr)) => {
                let b_h = correspondence_bracket(m, 0.5 * (pr + s.r), 0.5 * (pt + s.theta));
                let b_r = correspondence_bracket(m, 0.5 * (prr + r_rot), theta_bar);
                let lhs = b_r * (r_rot - prr);
                let rhs = b_h * (s.r - pr);
                (lhs - rhs).abs() / rhs.abs().max(1e-12)
            }
        };
        max_jacobian = max_jacobian.max(jacobian_residual);
        prev_point = Some((s.r, s.theta, r_rot));

        rows.push(IsometryRow {
            r: s.r,
            theta: s.theta,
            rbar: s.rbar,
            r_rot,
            theta_rot,
            k,
            k_rot,
            phi_r_prime_sq: phi_sq,
            realizable,
            rbar_rot: rbar_rot_acc,
            phi_r: phi_r_acc,
            jacobian_residual,
            degenerate: false,
        });
    }

    let truncated = failure.map(|(err, fail_r)| {
        rows.push(IsometryRow {
            r: fail_r,
            theta: f64::NAN,
            rbar: f64::NAN,
            r_rot: f64::NAN,
            theta_rot: f64::NAN,
            k: f64::NAN,
            k_rot: f64::NAN,
            phi_r_prime_sq: f64::NAN,
            realizable: false,
            rbar_rot: f64::NAN,
            phi_r: f64::NAN,
            jacobian_residual: f64::NAN,
            degenerate: true,
        });
        format!("truncated near r = {fail_r}: {err}")
    });

    Ok(IsometryReport {
        rows,
        theta_bar,
        max_k_discrepancy: max_k,
        max_rbar_discrepancy: max_rbar,
        max_jacobian_residual: max_jacobian,
        not_realizable,
        truncated,
    })
}

/// Right-hand side of the value-3 minimality relation, evaluated verbatim.
/// A value-3 helicoidal surface with height profile `phi` is minimal exactly
/// where this vanishes; the expression is the numerator of the mean
/// curvature expansion (see [`crate::paperforms`]).
pub fn minimality_residual(r: f64, theta: f64, a: f64, phi_d1: f64, phi_d2: f64) -> f64 {
    let c = |k: f64| (k * theta).cos();
    let s = |k: f64| (k * theta).sin();
    let r2 = r * r;
    let r3 = r2 * r;
    let r4 = r2 * r2;
    let r5 = r4 * r;
    let r6 = r4 * r2;
    let r7 = r6 * r;
    let r8 = r4 * r4;
    let r9 = r8 * r;
    let r10 = r8 * r2;
    let a2 = a * a;
    let p = phi_d1;

    let mut v = 2.0 * r3 * (r4 - 1.0) * (r8 + 2.0 * r6 * c(6.0) + r4 + a2) * phi_d2;
    v += 4.0 * r4 * (2.0 * r4 + r2 * c(6.0) - 1.0) * p * p * p;
    v += -12.0 * a * r5 * s(6.0) * p * p;

    let poly = r8 + r4 + a2;
    let bracket = 2.0 * (r2 + 1.0) * poly * c(2.0) + (2.0 * r2 - 1.0) * poly * c(4.0)
        - 2.0 * r2 * (10.0 * r8 + 6.0 * r6 * c(6.0) - 6.0 * r4 + 5.0 * a2) * c(6.0)
        + 3.0 * r4 * poly * c(8.0)
        - 16.0 * r8 * s(6.0) * s(6.0)
        + 4.0 * r6 * (r2 + 1.0) * c(2.0) * c(6.0)
        + 2.0 * r6 * (2.0 * r2 - 1.0) * c(4.0) * c(6.0)
        + 6.0 * r10 * c(6.0) * c(8.0)
        + r4 * (13.0 * a2 + 2.0 * r4 + 5.0 * r8 - 3.0)
        - 7.0 * a2;
    v += r2 * bracket * p;

    v += 2.0 * (2.0 * a * r3 + 1.0) * poly * s(2.0);
    v += r * (a + 2.0 * r) * poly * s(4.0);
    v += 2.0 * a * r3 * (15.0 * r8 - 9.0 * r4 + a2) * s(6.0);
    v += -3.0 * a * r5 * poly * s(8.0);
    v += 4.0 * r6 * (2.0 * a * r3 + 1.0) * s(2.0) * c(6.0);
    v += 2.0 * r7 * (a + 2.0 * r) * s(4.0) * c(6.0);
    v += -2.0 * a * r9 * (2.0 * s(6.0) + 3.0 * r2 * s(8.0)) * c(6.0);
    v
}

/// Coefficient multiplying `phi''` in the value-3 minimality relation.
fn slice_leading_coefficient(r: f64, theta: f64, a: f64) -> f64 {
    let r2 = r * r;
    let r3 = r2 * r;
    let r4 = r2 * r2;
    let r6 = r4 * r2;
    let r8 = r4 * r4;
    2.0 * r3 * (r4 - 1.0) * (r8 + 2.0 * r6 * (6.0 * theta).cos() + r4 + a * a)
}

/// Integrates the value-3 minimality relation as a first-order ODE for
/// `phi'(r)` on a fixed-theta slice, solving the relation for `phi''`.
/// `r0` and `r1` must lie on the same side of the singular radius `r = 1`.
/// Returns `(r, phi')` at accepted steps.
pub fn solve_slice_ode(
    theta: f64,
    a: f64,
    r0: f64,
    phi_prime0: f64,
    r1: f64,
    tol: f64,
) -> Result<Vec<(f64, f64)>> {
    if r0 <= 0.0 || r1 <= 0.0 {
        return Err(GeomError::Domain(format!(
            "slice radii ({r0}, {r1}) must be > 0"
        )));
    }
    if (r0 - 1.0) * (r1 - 1.0) <= 0.0 {
        return Err(GeomError::SingularCoefficient {
            r: 1.0,
            magnitude: 0.0,
        });
    }
    let rhs = |r: f64, y: &[f64; 1]| -> Result<[f64; 1]> {
        let coeff = slice_leading_coefficient(r, theta, a);
        if coeff.abs() < SINGULAR_COEFF_EPS {
            return Err(GeomError::SingularCoefficient {
                r,
                magnitude: coeff.abs(),
            });
        }
        let rest = minimality_residual(r, theta, a, y[0], 0.0);
        Ok([-rest / coeff])
    };
    let steps = rk45::integrate(rhs, r0, [phi_prime0], r1, tol)?;
    Ok(steps.iter().map(|s| (s.x, s.y[0])).collect())
}
