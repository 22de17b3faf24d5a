//! Surface families and their analytic jets.
//!
//! The value-m helicoidal surface combines two counter-rotating planar
//! profile terms with a linear pitch along the z-axis:
//!
//! ```text
//! x =  r^(m-1)/(m-1) cos((m-1)t) - r^(m+1)/(m+1) cos((m+1)t)
//! y = -r^(m-1)/(m-1) sin((m-1)t) - r^(m+1)/(m+1) sin((m+1)t)
//! z =  phi(r) + a t
//! ```
//!
//! for `m` outside {-1, 1}, `r > 0`. The rotational surface of value m has
//! the same (x, y) structure with pitch 0 and a height depending on the
//! radial parameter alone. The Bour minimal surface `B_m` is the member
//! whose height is `(2/m) r^m cos(m t)`; it is minimal when the pitch is 0.
//! All partial derivatives up to second order are closed-form; nothing here
//! differentiates numerically.

use crate::error::{GeomError, Result};
use crate::vec3::Vec3;

/// Excluded-value guard band: `|m - 1|` and `|m + 1|` must exceed this.
pub const M_GUARD: f64 = 1e-9;

/// Generating height function `phi(r)` with exact first and second
/// derivatives. Restricted to closed-form families so the derivatives stay
/// exact.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    /// `c0 + c1 r + c2 r^2 + ...`
    Polynomial(Vec<f64>),
    /// `coeff * r^exponent` (principal real power, valid for r > 0)
    PowerTerm {
        coeff: f64,
        exponent: f64,
    },
    Constant(f64),
}

impl ProfileSpec {
    pub fn zero() -> Self {
        ProfileSpec::Polynomial(vec![0.0])
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            ProfileSpec::Polynomial(c) => horner(c, r),
            ProfileSpec::PowerTerm { coeff, exponent } => coeff * r.powf(*exponent),
            ProfileSpec::Constant(c) => *c,
        }
    }

    /// First derivative `phi'(r)`.
    pub fn d1(&self, r: f64) -> f64 {
        match self {
            ProfileSpec::Polynomial(c) => {
                let mut acc = 0.0;
                for k in (1..c.len()).rev() {
                    acc = acc * r + c[k] * k as f64;
                }
                acc
            }
            ProfileSpec::PowerTerm { coeff, exponent } => coeff * exponent * r.powf(exponent - 1.0),
            ProfileSpec::Constant(_) => 0.0,
        }
    }

    /// Second derivative `phi''(r)`.
    pub fn d2(&self, r: f64) -> f64 {
        match self {
            ProfileSpec::Polynomial(c) => {
                let mut acc = 0.0;
                for k in (2..c.len()).rev() {
                    acc = acc * r + c[k] * (k * (k - 1)) as f64;
                }
                acc
            }
            ProfileSpec::PowerTerm { coeff, exponent } => {
                coeff * exponent * (exponent - 1.0) * r.powf(exponent - 2.0)
            }
            ProfileSpec::Constant(_) => 0.0,
        }
    }
}

fn horner(coeffs: &[f64], r: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * r + c;
    }
    acc
}

impl std::fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProfileSpec::Polynomial(c) => {
                write!(f, "poly:")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            ProfileSpec::PowerTerm { coeff, exponent } => write!(f, "power:{coeff},{exponent}"),
            ProfileSpec::Constant(c) => write!(f, "const:{c}"),
        }
    }
}

impl std::str::FromStr for ProfileSpec {
    type Err = GeomError;

    /// Parses the flag grammar `poly:c0,c1,...`, `power:c,p`, `const:c`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| GeomError::Domain(format!("profile '{s}': {msg}"));
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| bad("expected 'kind:values'"))?;
        let values: Vec<f64> = rest
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("values must be real numbers"))?;
        match kind {
            "poly" => {
                if values.is_empty() {
                    return Err(bad("poly needs at least one coefficient"));
                }
                Ok(ProfileSpec::Polynomial(values))
            }
            "power" => {
                if values.len() != 2 {
                    return Err(bad("power needs exactly 'coeff,exponent'"));
                }
                Ok(ProfileSpec::PowerTerm {
                    coeff: values[0],
                    exponent: values[1],
                })
            }
            "const" => {
                if values.len() != 1 {
                    return Err(bad("const needs exactly one value"));
                }
                Ok(ProfileSpec::Constant(values[0]))
            }
            other => Err(bad(&format!("unknown kind '{other}'"))),
        }
    }
}

impl serde::Serialize for ProfileSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ProfileSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which parametric family a [`SurfaceSpec`] denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceFamily {
    /// Value-m helicoidal surface (profile height + pitch).
    Helicoidal,
    /// Value-m rotational surface (pitch forced to 0, profile height).
    Rotational,
    /// Bour minimal surface `B_m`: built-in height `(2/m) r^m cos(m t)`,
    /// optionally screwed by a pitch term (the pitched variant is no longer
    /// minimal; it reproduces the figure-style pitched surface).
    BourMinimal,
    /// Classical helicoid `(r cos t, r sin t, phi(r) + a t)`.
    ClassicalHelicoid,
}

/// A fully-validated surface description.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub family: SurfaceFamily,
    /// Value parameter. Ignored by the classical helicoid.
    pub m: f64,
    /// Pitch (>= 0). Forced to 0 for the rotational family.
    pub a: f64,
    /// Height profile; `None` for the Bour minimal family, whose height is
    /// built in.
    pub profile: Option<ProfileSpec>,
}

fn check_m(m: f64) -> Result<()> {
    if (m - 1.0).abs() <= M_GUARD || (m + 1.0).abs() <= M_GUARD {
        return Err(GeomError::Domain(format!(
            "value parameter m = {m} is inside the excluded band around ±1"
        )));
    }
    Ok(())
}

fn check_pitch(a: f64) -> Result<()> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(GeomError::Domain(format!("pitch a = {a} must be >= 0")));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(GeomError::Domain(format!("r = {r} must be > 0")));
    }
    Ok(())
}

impl SurfaceSpec {
    pub fn helicoidal(m: f64, a: f64, profile: ProfileSpec) -> Result<Self> {
        check_m(m)?;
        check_pitch(a)?;
        Ok(SurfaceSpec {
            family: SurfaceFamily::Helicoidal,
            m,
            a,
            profile: Some(profile),
        })
    }

    /// Rotational surface of value m; any pitch is ignored (a = 0).
    pub fn rotational(m: f64, profile: ProfileSpec) -> Result<Self> {
        check_m(m)?;
        Ok(SurfaceSpec {
            family: SurfaceFamily::Rotational,
            m,
            a: 0.0,
            profile: Some(profile),
        })
    }

    /// The classical Bour minimal surface `B_m` (pitch 0).
    pub fn bour_minimal(m: f64) -> Result<Self> {
        Self::bour_minimal_pitched(m, 0.0)
    }

    /// `B_m` height plus a pitch term `a t`; minimal only when `a = 0`.
    pub fn bour_minimal_pitched(m: f64, a: f64) -> Result<Self> {
        check_m(m)?;
        check_pitch(a)?;
        if m.abs() <= M_GUARD {
            return Err(GeomError::Domain(
                "Bour minimal surface requires m != 0".to_string(),
            ));
        }
        Ok(SurfaceSpec {
            family: SurfaceFamily::BourMinimal,
            m,
            a,
            profile: None,
        })
    }

    pub fn classical_helicoid(a: f64, profile: ProfileSpec) -> Result<Self> {
        check_pitch(a)?;
        Ok(SurfaceSpec {
            family: SurfaceFamily::ClassicalHelicoid,
            m: 0.0,
            a,
            profile: Some(profile),
        })
    }

    fn profile(&self) -> &ProfileSpec {
        self.profile
            .as_ref()
            .expect("validated family carries a profile")
    }

    /// Surface point at `(r, theta)` for whatever family this spec denotes.
    pub fn eval(&self, r: f64, theta: f64) -> Result<Vec3> {
        check_r(r)?;
        match self.family {
            SurfaceFamily::Helicoidal => eval_helicoidal(self, r, theta),
            SurfaceFamily::Rotational => {
                let phi = self.profile().eval(r);
                eval_rotational(self, r, theta, phi)
            }
            SurfaceFamily::BourMinimal => {
                let p = eval_bour_minimal(self.m, r, theta)?;
                Ok(Vec3::new(p.x, p.y, p.z + self.a * theta))
            }
            SurfaceFamily::ClassicalHelicoid => {
                eval_classical_helicoid(self.a, self.profile(), r, theta)
            }
        }
    }

    /// Full second-order jet at `(r, theta)`; see [`jet`].
    pub fn jet(&self, r: f64, theta: f64) -> Result<Jet2> {
        jet(self, r, theta)
    }
}

/// Surface point plus first and second partials with respect to `(r, theta)`.
///
/// Mixed-partial symmetry holds by construction: there is a single
/// `p_r_theta` field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub p: Vec3,
    pub p_r: Vec3,
    pub p_theta: Vec3,
    pub p_rr: Vec3,
    pub p_r_theta: Vec3,
    pub p_theta_theta: Vec3,
}

/// The shared (x, y) block of the value-m families and its partials.
struct XyJet {
    x_r: f64,
    y_r: f64,
    x_t: f64,
    y_t: f64,
    x_rr: f64,
    y_rr: f64,
    x_rt: f64,
    y_rt: f64,
    x_tt: f64,
    y_tt: f64,
}

fn xy_jet(m: f64, r: f64, theta: f64) -> XyJet {
    let al = m - 1.0;
    let be = m + 1.0;
    let (sa, ca) = (al * theta).sin_cos();
    let (sb, cb) = (be * theta).sin_cos();
    let r_al = r.powf(al);
    let r_be = r.powf(be);
    let r_al1 = r.powf(al - 1.0);
    let r_be1 = r.powf(be - 1.0);
    let r_al2 = r.powf(al - 2.0);
    let r_be2 = r.powf(be - 2.0);
    XyJet {
        x_r: r_al1 * ca - r_be1 * cb,
        y_r: -(r_al1 * sa) - r_be1 * sb,
        x_t: -(r_al * sa) + r_be * sb,
        y_t: -(r_al * ca) - r_be * cb,
        x_rr: (al - 1.0) * r_al2 * ca - (be - 1.0) * r_be2 * cb,
        y_rr: -((al - 1.0) * r_al2 * sa) - (be - 1.0) * r_be2 * sb,
        x_rt: -(al * r_al1 * sa) + be * r_be1 * sb,
        y_rt: -(al * r_al1 * ca) - be * r_be1 * cb,
        x_tt: -(al * r_al * ca) + be * r_be * cb,
        y_tt: al * r_al * sa + be * r_be * sb,
    }
}

/// Helicoidal surface point straight from the reduced closed form.
pub fn eval_helicoidal(spec: &SurfaceSpec, r: f64, theta: f64) -> Result<Vec3> {
    if spec.family != SurfaceFamily::Helicoidal {
        return Err(GeomError::Domain(format!(
            "eval_helicoidal needs the helicoidal family, got {:?}",
            spec.family
        )));
    }
    check_r(r)?;
    check_m(spec.m)?;
    let al = spec.m - 1.0;
    let be = spec.m + 1.0;
    let x = (al * theta).cos() * (r.powf(al) / al) - (be * theta).cos() * (r.powf(be) / be);
    let y = -((al * theta).sin() * (r.powf(al) / al)) - (be * theta).sin() * (r.powf(be) / be);
    let z = spec.profile().eval(r) + spec.a * theta;
    Ok(Vec3::new(x, y, z))
}

fn mat_mul(m: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    Vec3::new(
        m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
        m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
        m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
    )
}

/// Two-block definition of the helicoidal surface: two rotation matrices of
/// opposite sense applied to two planar profile curves, each carrying half
/// of the pitch term. Exists to be checked against [`eval_helicoidal`],
/// which it must reproduce.
pub fn compose_definition(spec: &SurfaceSpec, r: f64, theta: f64) -> Result<Vec3> {
    if spec.family != SurfaceFamily::Helicoidal {
        return Err(GeomError::Domain(format!(
            "compose_definition needs the helicoidal family, got {:?}",
            spec.family
        )));
    }
    check_r(r)?;
    check_m(spec.m)?;
    let al = spec.m - 1.0;
    let be = spec.m + 1.0;
    let (sa, ca) = (al * theta).sin_cos();
    let (sb, cb) = (be * theta).sin_cos();
    // clockwise by (m-1) theta
    let rot1 = [[ca, sa, 0.0], [-sa, ca, 0.0], [0.0, 0.0, 1.0]];
    // counterclockwise by (m+1) theta
    let rot2 = [[cb, -sb, 0.0], [sb, cb, 0.0], [0.0, 0.0, 1.0]];
    let phi = spec.profile().eval(r);
    let gamma1 = Vec3::new(r.powf(al) / al, 0.0, 0.5 * phi);
    let gamma2 = Vec3::new(-(r.powf(be) / be), 0.0, 0.5 * phi);
    let axis = Vec3::new(0.0, 0.0, 1.0);
    let half_pitch = axis.scale(0.5 * spec.a * theta);
    let block1 = mat_mul(&rot1, gamma1) + half_pitch;
    let block2 = mat_mul(&rot2, gamma2) + half_pitch;
    Ok(block1 + block2)
}

/// Rotational surface point with a caller-supplied height value. Only the
/// value parameter of `spec` is used.
pub fn eval_rotational(
    spec: &SurfaceSpec,
    r_rot: f64,
    theta_rot: f64,
    phi_value: f64,
) -> Result<Vec3> {
    check_r(r_rot)?;
    check_m(spec.m)?;
    let al = spec.m - 1.0;
    let be = spec.m + 1.0;
    let x = (al * theta_rot).cos() * (r_rot.powf(al) / al)
        - (be * theta_rot).cos() * (r_rot.powf(be) / be);
    let y = -((al * theta_rot).sin() * (r_rot.powf(al) / al))
        - (be * theta_rot).sin() * (r_rot.powf(be) / be);
    Ok(Vec3::new(x, y, phi_value))
}

/// Bour minimal surface `B_m`: pitch 0, height `(2/m) r^m cos(m t)`.
pub fn eval_bour_minimal(m: f64, r: f64, theta: f64) -> Result<Vec3> {
    check_r(r)?;
    check_m(m)?;
    if m.abs() <= M_GUARD {
        return Err(GeomError::Domain(
            "Bour minimal surface requires m != 0".to_string(),
        ));
    }
    let al = m - 1.0;
    let be = m + 1.0;
    let x = (al * theta).cos() * (r.powf(al) / al) - (be * theta).cos() * (r.powf(be) / be);
    let y = -((al * theta).sin() * (r.powf(al) / al)) - (be * theta).sin() * (r.powf(be) / be);
    let z = 2.0 / m * r.powf(m) * (m * theta).cos();
    Ok(Vec3::new(x, y, z))
}

/// Classical helicoid `(r cos t, r sin t, phi(r) + a t)`.
pub fn eval_classical_helicoid(a: f64, profile: &ProfileSpec, r: f64, theta: f64) -> Result<Vec3> {
    check_r(r)?;
    check_pitch(a)?;
    Ok(Vec3::new(
        r * theta.cos(),
        r * theta.sin(),
        profile.eval(r) + a * theta,
    ))
}

/// Closed-form second-order jet for any family. The point entry is computed
/// through the family's own eval, so `jet(..).p` equals the eval output
/// exactly.
pub fn jet(spec: &SurfaceSpec, r: f64, theta: f64) -> Result<Jet2> {
    let p = spec.eval(r, theta)?;
    match spec.family {
        SurfaceFamily::Helicoidal | SurfaceFamily::Rotational => {
            let xy = xy_jet(spec.m, r, theta);
            let prof = spec.profile();
            Ok(Jet2 {
                p,
                p_r: Vec3::new(xy.x_r, xy.y_r, prof.d1(r)),
                p_theta: Vec3::new(xy.x_t, xy.y_t, spec.a),
                p_rr: Vec3::new(xy.x_rr, xy.y_rr, prof.d2(r)),
                p_r_theta: Vec3::new(xy.x_rt, xy.y_rt, 0.0),
                p_theta_theta: Vec3::new(xy.x_tt, xy.y_tt, 0.0),
            })
        }
        SurfaceFamily::BourMinimal => {
            let m = spec.m;
            let xy = xy_jet(m, r, theta);
            let (sm, cm) = (m * theta).sin_cos();
            let z_r = 2.0 * r.powf(m - 1.0) * cm;
            let z_rr = 2.0 * (m - 1.0) * r.powf(m - 2.0) * cm;
            let z_t = -2.0 * r.powf(m) * sm + spec.a;
            let z_rt = -2.0 * m * r.powf(m - 1.0) * sm;
            let z_tt = -2.0 * m * r.powf(m) * cm;
            Ok(Jet2 {
                p,
                p_r: Vec3::new(xy.x_r, xy.y_r, z_r),
                p_theta: Vec3::new(xy.x_t, xy.y_t, z_t),
                p_rr: Vec3::new(xy.x_rr, xy.y_rr, z_rr),
                p_r_theta: Vec3::new(xy.x_rt, xy.y_rt, z_rt),
                p_theta_theta: Vec3::new(xy.x_tt, xy.y_tt, z_tt),
            })
        }
        SurfaceFamily::ClassicalHelicoid => {
            let (st, ct) = theta.sin_cos();
            let prof = spec.profile();
            Ok(Jet2 {
                p,
                p_r: Vec3::new(ct, st, prof.d1(r)),
                p_theta: Vec3::new(-r * st, r * ct, spec.a),
                p_rr: Vec3::new(0.0, 0.0, prof.d2(r)),
                p_r_theta: Vec3::new(-st, ct, 0.0),
                p_theta_theta: Vec3::new(-r * ct, -r * st, 0.0),
            })
        }
    }
}
