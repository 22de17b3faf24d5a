//! Numerical differential geometry of value-m helicoidal surfaces.
//!
//! The library evaluates the two-block screw-motion family `H_m(r, theta)`
//! (counter-rotating `r^(m-1)` and `r^(m+1)` profile terms plus a linear
//! pitch), its rotational partners, and the classical Bour minimal surface
//! `B_m`, all with exact analytic jets up to second order. On top of the
//! surface kernel sit:
//!
//! - [`diffgeo`]: fundamental forms, Gauss map, mean/Gaussian curvature from
//!   first principles, and an independent finite-difference jet oracle;
//! - [`bour`]: orthogonal-trajectory tracing, natural (semi-geodesic)
//!   coordinates, the helicoidal-to-rotational correspondence, and the
//!   value-3 minimality relation as residual evaluator and slice ODE;
//! - [`paperforms`]: literal transcriptions of the printed value-3 closed
//!   forms, cross-validated against the first-principles pipeline and
//!   reported (never patched) in a fidelity sweep;
//! - [`meshio`]: tensor-grid sampling into triangle meshes with per-vertex
//!   scalar fields, exported as OBJ, PLY, and CSV.
//!
//! All operations are pure functions of their inputs; nothing in the crate
//! holds mutable state, so values can be shared freely across threads.

pub mod bour;
pub mod diffgeo;
mod error;
pub mod meshio;
pub mod paperforms;
pub mod rk45;
pub mod surfaces;
mod vec3;

pub use error::{GeomError, Result};
pub use vec3::Vec3;
