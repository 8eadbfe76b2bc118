use thiserror::Error;

use crate::expr::{ParseError, Point};

/// Failure while evaluating an expression at a point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error in `{expr}` at ({x1}, {x2}): {reason}", x1 = point[0], x2 = point[1])]
    Domain {
        expr: String,
        point: Point,
        reason: String,
    },
    #[error(
        "quadrature did not converge on [{lo}, {hi}] after {intervals} subintervals \
         (worst subinterval [{worst_lo}, {worst_hi}], error estimate {estimate:e})"
    )]
    Quadrature {
        lo: f64,
        hi: f64,
        intervals: usize,
        worst_lo: f64,
        worst_hi: f64,
        estimate: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("case inadmissible: {0}")]
    Inadmissible(String),
    #[error("curvature constant k is not constant on the region (spread {spread:e} around {mean})")]
    NonConstantK { mean: f64, spread: f64 },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
