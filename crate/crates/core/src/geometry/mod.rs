//! Diagonal metrics `g = dx1^2 / f1^2 + dx2^2 / f2^2` on the plane, their
//! orthonormal frame `E_i = f_i ∂_i`, and the Lie derivative of `g` along a
//! vector field.

mod classify;
mod residual;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, EvalError, Result};
use crate::expr::{self, eval_jet2, parse, Expr, Jet2, Point};

pub use classify::{classify_dependence, DependenceLabel, DependenceProfile, Dependence, EPS_DEP};
pub use residual::{
    connection_table, frame_coeffs, killing_residual_coordinate, killing_residual_frame,
    lie_bracket_frame, ConnectionTable, FrameCoeffs, KillingResidual, SymTensor2,
};

/// Smallest |f_i| accepted when validating a metric on a lattice.
pub const NONZERO_THRESHOLD: f64 = 1e-12;
/// Lattice size used to validate metrics and classify dependence.
pub const VALIDATION_GRID: usize = 41;

/// Axis-aligned rectangle `[xmin, xmax] × [ymin, ymax]` in `(x1, x2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Region {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl From<[f64; 4]> for Region {
    fn from(r: [f64; 4]) -> Self {
        Region {
            xmin: r[0],
            xmax: r[1],
            ymin: r[2],
            ymax: r[3],
        }
    }
}

impl From<Region> for [f64; 4] {
    fn from(r: Region) -> Self {
        [r.xmin, r.xmax, r.ymin, r.ymax]
    }
}

impl Default for Region {
    fn default() -> Self {
        Region::from([-1.0, 1.0, -1.0, 1.0])
    }
}

impl Region {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.xmin, self.xmax, self.ymin, self.ymax]
            .iter()
            .all(|v| v.is_finite())
            && self.xmin < self.xmax
            && self.ymin < self.ymax;
        if ok {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "region must satisfy xmin < xmax and ymin < ymax, got {:?}",
                <[f64; 4]>::from(*self)
            )))
        }
    }

    pub fn center(&self) -> Point {
        [0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax)]
    }

    /// `n × n` lattice including the boundary, row-major: `x2` is the slow
    /// index and `x1` the fast one.
    pub fn lattice(&self, n: usize) -> Vec<Point> {
        let n = n.max(2);
        let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let mut pts = Vec::with_capacity(n * n);
        for j in 0..n {
            let y = step(self.ymin, self.ymax, j);
            for i in 0..n {
                pts.push([step(self.xmin, self.xmax, i), y]);
            }
        }
        pts
    }
}

/// The pair `(f1, f2)`; metric components are `1 / f_i^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMetric {
    pub f1: Expr,
    pub f2: Expr,
}

impl DiagonalMetric {
    pub fn new(f1: Expr, f2: Expr) -> Self {
        DiagonalMetric { f1, f2 }
    }

    pub fn parse(f1: &str, f2: &str) -> Result<Self> {
        Ok(DiagonalMetric::new(parse(f1)?, parse(f2)?))
    }

    pub fn euclidean() -> Self {
        DiagonalMetric::new(Expr::Lit(1.0), Expr::Lit(1.0))
    }

    pub fn f(&self, i: usize) -> &Expr {
        if i == 0 {
            &self.f1
        } else {
            &self.f2
        }
    }

    /// Jets of `f1`, `f2` at `p`, rejecting (near-)zeros.
    pub fn jets(&self, p: Point) -> std::result::Result<[Jet2; 2], EvalError> {
        let j1 = eval_jet2(&self.f1, p)?;
        let j2 = eval_jet2(&self.f2, p)?;
        for (j, e) in [(&j1, &self.f1), (&j2, &self.f2)] {
            if j.value.abs() <= 1e-14 {
                return Err(EvalError::Domain {
                    expr: e.to_string(),
                    point: p,
                    reason: "metric function vanishes".into(),
                });
            }
        }
        Ok([j1, j2])
    }

    /// Coordinate components `(g11, g22)` at `p`.
    pub fn components(&self, p: Point) -> std::result::Result<[f64; 2], EvalError> {
        let f1 = expr::eval(&self.f1, p)?;
        let f2 = expr::eval(&self.f2, p)?;
        Ok([1.0 / (f1 * f1), 1.0 / (f2 * f2)])
    }

    /// Checks `|f_i| > NONZERO_THRESHOLD` on an `n × n` lattice of `region`.
    ///
    /// Sampling cannot prove that an arbitrary expression never vanishes;
    /// a zero between lattice points goes unnoticed.
    pub fn validate_on(&self, region: &Region, n: usize) -> Result<()> {
        for p in region.lattice(n) {
            for (name, e) in [("f1", &self.f1), ("f2", &self.f2)] {
                let v = expr::eval(e, p)?;
                if v.abs() <= NONZERO_THRESHOLD {
                    return Err(Error::Input(format!(
                        "{name} = {e} vanishes at ({}, {})",
                        p[0], p[1]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Basis in which vector field components are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Orthonormal frame `E_i = f_i ∂_i`.
    Frame,
    /// Coordinate fields `∂_i`.
    Coordinate,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Frame => "frame",
            Basis::Coordinate => "coordinate",
        })
    }
}

/// `V = c1 B_1 + c2 B_2` in the chosen basis.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub basis: Basis,
    pub c1: Expr,
    pub c2: Expr,
}

impl VectorField {
    pub fn new(basis: Basis, c1: Expr, c2: Expr) -> Self {
        VectorField { basis, c1, c2 }
    }

    pub fn parse(basis: Basis, c1: &str, c2: &str) -> Result<Self> {
        Ok(VectorField::new(basis, parse(c1)?, parse(c2)?))
    }

    pub fn zero(basis: Basis) -> Self {
        VectorField::new(basis, Expr::Lit(0.0), Expr::Lit(0.0))
    }

    pub fn component(&self, i: usize) -> &Expr {
        if i == 0 {
            &self.c1
        } else {
            &self.c2
        }
    }

    pub fn is_closed_form(&self) -> bool {
        self.c1.is_closed_form() && self.c2.is_closed_form()
    }

    /// Jets of the frame components `(V^1, V^2)` at `p`.
    pub fn frame_jets(
        &self,
        m: &DiagonalMetric,
        p: Point,
    ) -> std::result::Result<[Jet2; 2], EvalError> {
        let a = eval_jet2(&self.c1, p)?;
        let b = eval_jet2(&self.c2, p)?;
        match self.basis {
            Basis::Frame => Ok([a, b]),
            Basis::Coordinate => {
                let [f1, f2] = m.jets(p)?;
                Ok([a / f1, b / f2])
            }
        }
    }

    /// Jets of the coordinate components `(V̄^1, V̄^2)` at `p`.
    pub fn coordinate_jets(
        &self,
        m: &DiagonalMetric,
        p: Point,
    ) -> std::result::Result<[Jet2; 2], EvalError> {
        let a = eval_jet2(&self.c1, p)?;
        let b = eval_jet2(&self.c2, p)?;
        match self.basis {
            Basis::Coordinate => Ok([a, b]),
            Basis::Frame => {
                let [f1, f2] = m.jets(p)?;
                Ok([a * f1, b * f2])
            }
        }
    }

    /// Linear combination `Σ w_k V_k`, all fields in the same basis.
    pub fn combine(fields: &[(f64, &VectorField)]) -> Option<VectorField> {
        let basis = fields.first()?.1.basis;
        if fields.iter().any(|(_, v)| v.basis != basis) {
            return None;
        }
        let mut c1 = Expr::Lit(0.0);
        let mut c2 = Expr::Lit(0.0);
        for (w, v) in fields {
            c1 = expr::add(c1, expr::mul(Expr::Lit(*w), v.c1.clone()));
            c2 = expr::add(c2, expr::mul(Expr::Lit(*w), v.c2.clone()));
        }
        Some(VectorField::new(basis, c1, c2))
    }
}

/// Re-expresses `v` in `target`, using `V̄^i = f_i V^i`.
pub fn convert_basis(v: &VectorField, m: &DiagonalMetric, target: Basis) -> VectorField {
    match (v.basis, target) {
        (a, b) if a == b => v.clone(),
        (Basis::Frame, Basis::Coordinate) => VectorField::new(
            target,
            expr::mul(v.c1.clone(), m.f1.clone()),
            expr::mul(v.c2.clone(), m.f2.clone()),
        ),
        _ => VectorField::new(
            target,
            expr::div(v.c1.clone(), m.f1.clone()),
            expr::div(v.c2.clone(), m.f2.clone()),
        ),
    }
}
