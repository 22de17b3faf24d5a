use std::fmt;

/// Errors shared by the geometry kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    /// Input outside the mathematical domain of an operation (`r <= 0`,
    /// excluded value parameter, malformed grid, ...).
    Domain(String),
    /// The first fundamental form is singular: `det I` (or `G`) fell at or
    /// below the degeneracy threshold, so normals and curvatures are
    /// undefined at the point.
    DegenerateMetric { det_i: f64 },
    /// A denominator of a closed-form expression vanished.
    DivisionByZero { what: &'static str },
    /// The coefficient multiplying the highest derivative of an ODE dropped
    /// below threshold (the slice ODE is singular at `r = 1`).
    SingularCoefficient { r: f64, magnitude: f64 },
    /// The adaptive integrator could not satisfy the requested tolerance
    /// within its step budget.
    ToleranceNotMet { tol: f64, detail: String },
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::Domain(msg) => write!(f, "domain error: {msg}"),
            GeomError::DegenerateMetric { det_i } => {
                write!(
                    f,
                    "degenerate metric: det I = {det_i:e} is at or below threshold"
                )
            }
            GeomError::DivisionByZero { what } => write!(f, "division by zero in {what}"),
            GeomError::SingularCoefficient { r, magnitude } => write!(
                f,
                "singular leading coefficient near r = {r} (|coefficient| = {magnitude:e})"
            ),
            GeomError::ToleranceNotMet { tol, detail } => {
                write!(f, "adaptive integrator failed at tol {tol:e}: {detail}")
            }
        }
    }
}

impl std::error::Error for GeomError {}

pub type Result<T> = std::result::Result<T, GeomError>;
