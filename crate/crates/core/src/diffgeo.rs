//! Fundamental forms, Gauss map and curvatures from first principles,
//! plus the finite-difference jet oracle used to cross-check the analytic
//! derivatives.
//!
//! Orientation convention, fixed project-wide: the unit normal is
//! `(p_r x p_theta) / |p_r x p_theta|`. Printed formulas compared against
//! this convention elsewhere are reported, never re-signed.

use crate::error::{GeomError, Result};
use crate::surfaces::{Jet2, ProfileSpec, SurfaceSpec};
use crate::vec3::Vec3;

/// Degeneracy threshold on `det I` (and on `|p_r x p_theta|`).
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Default step of the finite-difference jet oracle.
pub const FD_DEFAULT_H: f64 = 1e-5;

/// First and second fundamental form coefficients with the unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// `e*g - f^2`
    pub det_i: f64,
    pub normal: Vec3,
}

/// Mean and Gaussian curvature at a parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub h: f64,
    pub k: f64,
    pub forms: FundamentalForms,
    pub at: (f64, f64),
}

/// Closed-form first fundamental form of the value-m helicoidal surface:
///
/// ```text
/// E = r^(2m-4) (r^4 - 2 r^2 cos(2mt) + 1) + phi'^2
/// F = 2 r^(2m-1) sin(2mt) + a phi'
/// G = r^(2m-2) (r^4 + 2 r^2 cos(2mt) + 1) + a^2
/// ```
pub fn first_form_closed(
    m: f64,
    a: f64,
    profile: &ProfileSpec,
    r: f64,
    theta: f64,
) -> Result<(f64, f64, f64)> {
    if !(r.is_finite() && r > 0.0) {
        return Err(GeomError::Domain(format!("r = {r} must be > 0")));
    }
    if (m - 1.0).abs() <= crate::surfaces::M_GUARD || (m + 1.0).abs() <= crate::surfaces::M_GUARD {
        return Err(GeomError::Domain(format!(
            "m = {m} is inside the excluded band around ±1"
        )));
    }
    let d1 = profile.d1(r);
    let c = (2.0 * m * theta).cos();
    let s = (2.0 * m * theta).sin();
    let r2 = r * r;
    let r4 = r2 * r2;
    let e = r.powf(2.0 * m - 4.0) * (r4 - 2.0 * r2 * c + 1.0) + d1 * d1;
    let f = 2.0 * r.powf(2.0 * m - 1.0) * s + a * d1;
    let g = r.powf(2.0 * m - 2.0) * (r4 + 2.0 * r2 * c + 1.0) + a * a;
    Ok((e, f, g))
}

/// Dot-product first form: `E = p_r.p_r`, `F = p_r.p_theta`, `G = p_theta.p_theta`.
pub fn first_form_from_jet(j: &Jet2) -> (f64, f64, f64) {
    (
        j.p_r.dot(j.p_r),
        j.p_r.dot(j.p_theta),
        j.p_theta.dot(j.p_theta),
    )
}

/// Unit normal `(p_r x p_theta) / |p_r x p_theta|`.
pub fn gauss_map(j: &Jet2) -> Result<Vec3> {
    let cr = j.p_r.cross(j.p_theta);
    let n = cr.norm();
    if n <= DEGENERACY_EPS {
        return Err(GeomError::DegenerateMetric { det_i: n * n });
    }
    Ok(cr.scale(1.0 / n))
}

/// Second fundamental form coefficients `L = e.p_rr`, `M = e.p_rtheta`,
/// `N = e.p_thetatheta`.
pub fn second_form(j: &Jet2) -> Result<(f64, f64, f64)> {
    let e = gauss_map(j)?;
    Ok((e.dot(j.p_rr), e.dot(j.p_r_theta), e.dot(j.p_theta_theta)))
}

/// Weingarten quotients `H = (EN - 2FM + GL) / (2 det I)` and
/// `K = (LN - M^2) / det I`.
pub fn curvatures(fo: &FundamentalForms) -> Result<(f64, f64)> {
    if fo.det_i <= DEGENERACY_EPS {
        return Err(GeomError::DegenerateMetric { det_i: fo.det_i });
    }
    let h = (fo.e * fo.n - 2.0 * fo.f * fo.m + fo.g * fo.l) / (2.0 * fo.det_i);
    let k = (fo.l * fo.n - fo.m * fo.m) / fo.det_i;
    Ok((h, k))
}

/// Assembles the full [`FundamentalForms`] from a jet.
pub fn forms_from_jet(j: &Jet2) -> Result<FundamentalForms> {
    let (e, f, g) = first_form_from_jet(j);
    let normal = gauss_map(j)?;
    let (l, m, n) = (
        normal.dot(j.p_rr),
        normal.dot(j.p_r_theta),
        normal.dot(j.p_theta_theta),
    );
    Ok(FundamentalForms {
        e,
        f,
        g,
        l,
        m,
        n,
        det_i: e * g - f * f,
        normal,
    })
}

/// Forms and curvatures at a parameter point via the analytic jet.
pub fn curvature_at(spec: &SurfaceSpec, r: f64, theta: f64) -> Result<CurvatureSample> {
    let j = spec.jet(r, theta)?;
    let forms = forms_from_jet(&j)?;
    let (h, k) = curvatures(&forms)?;
    Ok(CurvatureSample {
        h,
        k,
        forms,
        at: (r, theta),
    })
}

/// Central-difference jet of the family's eval: 2-point central stencils for
/// first partials, 5-point (fourth-order) stencils for pure second partials,
/// a 4-point cross stencil for the mixed partial. `h` defaults to
/// [`FD_DEFAULT_H`] at call sites that do not care.
pub fn fd_jet(spec: &SurfaceSpec, r: f64, theta: f64, h: f64) -> Result<Jet2> {
    if !(h.is_finite() && h > 0.0) {
        return Err(GeomError::Domain(format!("fd step h = {h} must be > 0")));
    }
    if r - 2.0 * h <= 0.0 {
        return Err(GeomError::Domain(format!(
            "fd stencil leaves the domain: r - 2h = {} <= 0",
            r - 2.0 * h
        )));
    }
    let f = |rr: f64, tt: f64| spec.eval(rr, tt);
    let p0 = f(r, theta)?;

    let d1 = |plus: Vec3, minus: Vec3| (plus - minus).scale(1.0 / (2.0 * h));
    // difference form keeps the stencil exact on constant components
    let d2 = |p2: Vec3, p1: Vec3, m1: Vec3, m2: Vec3| {
        (-(p2 - p0) + (p1 - p0).scale(16.0) + (m1 - p0).scale(16.0) - (m2 - p0))
            .scale(1.0 / (12.0 * h * h))
    };

    let rp = f(r + h, theta)?;
    let rm = f(r - h, theta)?;
    let rp2 = f(r + 2.0 * h, theta)?;
    let rm2 = f(r - 2.0 * h, theta)?;
    let tp = f(r, theta + h)?;
    let tm = f(r, theta - h)?;
    let tp2 = f(r, theta + 2.0 * h)?;
    let tm2 = f(r, theta - 2.0 * h)?;
    let pp = f(r + h, theta + h)?;
    let pm = f(r + h, theta - h)?;
    let mp = f(r - h, theta + h)?;
    let mm = f(r - h, theta - h)?;

    Ok(Jet2 {
        p: p0,
        p_r: d1(rp, rm),
        p_theta: d1(tp, tm),
        p_rr: d2(rp2, rp, rm, rm2),
        p_theta_theta: d2(tp2, tp, tm, tm2),
        p_r_theta: (pp - pm - mp + mm).scale(1.0 / (4.0 * h * h)),
    })
}
