//! Killing vector fields of diagonal metrics
//! `g = dx1^2 / f1^2 + dx2^2 / f2^2` on the plane.
//!
//! * [`expr`]: expression language, second-order jets, symbolic derivatives.
//! * [`geometry`]: frame, connection and the Lie derivative of `g`, in frame
//!   and coordinate form.
//! * [`families`]: closed-form Killing fields for each dependence pattern
//!   of `(f1, f2)`.
//! * [`verify`]: lattice sweeps, flow-isometry checks and finite-difference
//!   oracles.
//!
//! ```
//! use killing_core::geometry::{killing_residual_frame, Basis, DiagonalMetric, VectorField};
//!
//! let m = DiagonalMetric::parse("exp(x1)", "exp(x2)").unwrap();
//! let v = VectorField::parse(Basis::Coordinate, "exp(x1)", "exp(x2)").unwrap();
//! let r = killing_residual_frame(&m, &v, [0.3, -0.2]).unwrap();
//! assert!(r.max_abs() < 1e-14);
//! ```

pub mod error;
pub mod expr;
pub mod families;
pub mod geometry;
pub mod io;
pub mod quad;
pub mod verify;

pub use error::{Error, EvalError, Result};
