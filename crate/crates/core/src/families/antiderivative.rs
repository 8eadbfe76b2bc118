use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::expr::{self, eval_jet2, Expr, Jet2, Point, Var};
use crate::quad;

/// Absolute tolerance for every antiderivative quadrature.
pub const QUAD_TOL: f64 = 1e-12;

/// What is integrated: `f^2`, `1/f` or `f` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegrandKind {
    Square,
    Reciprocal,
    Plain,
}

/// `F(x) = ∫_anchor^x g(t) dt` where `g` is derived from a one-variable
/// source expression according to [`IntegrandKind`].
///
/// The source is read as a function of `var` alone; the other coordinate is
/// pinned to 0 when it is evaluated. An optional table of precomputed node
/// values shortens each quadrature; it is built once in [`Self::warmed`]
/// and only read afterwards.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    kind: IntegrandKind,
    source: Expr,
    var: Var,
    anchor: f64,
    nodes: Vec<(f64, f64)>,
}

impl PartialEq for Antiderivative {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.source == other.source
            && self.var == other.var
            && self.anchor.to_bits() == other.anchor.to_bits()
    }
}

impl Antiderivative {
    pub fn new(kind: IntegrandKind, source: Expr, var: Var, anchor: f64) -> Self {
        Antiderivative {
            kind,
            source,
            var,
            anchor,
            nodes: Vec::new(),
        }
    }

    /// Precomputes `F` on `count` evenly spaced nodes over `[lo, hi]`.
    pub fn warmed(mut self, lo: f64, hi: f64, count: usize) -> Result<Self, EvalError> {
        let count = count.max(2);
        let mut nodes = Vec::with_capacity(count);
        for i in 0..count {
            let t = lo + (hi - lo) * i as f64 / (count - 1) as f64;
            nodes.push((t, self.integrate_from(self.anchor, 0.0, t)?));
        }
        self.nodes = nodes;
        Ok(self)
    }

    pub fn kind(&self) -> IntegrandKind {
        self.kind
    }

    pub fn source(&self) -> &Expr {
        &self.source
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    fn point(&self, t: f64) -> Point {
        let mut p = [0.0; 2];
        p[self.var.index()] = t;
        p
    }

    fn source_jet(&self, t: f64) -> Result<Jet2, EvalError> {
        eval_jet2(&self.source, self.point(t))
    }

    fn zero_source(&self, t: f64) -> EvalError {
        EvalError::Domain {
            expr: format!("1/({})", self.source),
            point: self.point(t),
            reason: "reciprocal integrand of a vanishing function".into(),
        }
    }

    /// Integrand value and its derivative along `var` at `t`.
    pub fn integrand(&self, t: f64) -> Result<(f64, f64), EvalError> {
        let j = self.source_jet(t)?;
        let (f, df) = (j.value, j.d(self.var.index()));
        Ok(match self.kind {
            IntegrandKind::Square => (f * f, 2.0 * f * df),
            IntegrandKind::Reciprocal => {
                if f == 0.0 {
                    return Err(self.zero_source(t));
                }
                (1.0 / f, -df / (f * f))
            }
            IntegrandKind::Plain => (f, df),
        })
    }

    fn integrand_value(&self, t: f64) -> Result<f64, EvalError> {
        let f = expr::eval(&self.source, self.point(t))?;
        match self.kind {
            IntegrandKind::Square => Ok(f * f),
            IntegrandKind::Reciprocal if f == 0.0 => Err(self.zero_source(t)),
            IntegrandKind::Reciprocal => Ok(1.0 / f),
            IntegrandKind::Plain => Ok(f),
        }
    }

    fn integrate_from(&self, from: f64, base: f64, to: f64) -> Result<f64, EvalError> {
        Ok(base + quad::integrate(|t| self.integrand_value(t), from, to, QUAD_TOL)?)
    }

    /// `F(x)`; exactly 0 at the anchor.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        if x == self.anchor {
            return Ok(0.0);
        }
        let nearest = self
            .nodes
            .iter()
            .min_by(|a, b| (a.0 - x).abs().total_cmp(&(b.0 - x).abs()));
        match nearest {
            Some(&(t, v)) if (t - x).abs() < (self.anchor - x).abs() => {
                self.integrate_from(t, v, x)
            }
            _ => self.integrate_from(self.anchor, 0.0, x),
        }
    }

    /// Jet of `F` composed with the coordinate `var`.
    pub fn jet(&self, p: Point) -> Result<Jet2, EvalError> {
        let i = self.var.index();
        let x = p[i];
        let (g, dg) = self.integrand(x)?;
        let mut j = Jet2::constant(self.eval(x)?);
        j.grad[i] = g;
        j.hess[if i == 0 { 0 } else { 2 }] = dg;
        Ok(j)
    }

    /// The integrand as an expression tree in `var`.
    pub fn integrand_expr(&self) -> Expr {
        let f = self.source.substitute(self.var.other(), &Expr::Lit(0.0));
        match self.kind {
            IntegrandKind::Square => expr::mul(f.clone(), f),
            IntegrandKind::Reciprocal => expr::div(Expr::Lit(1.0), f),
            IntegrandKind::Plain => f,
        }
    }
}

impl fmt::Display for Antiderivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match self.kind {
            IntegrandKind::Square => format!("({})^2", self.source),
            IntegrandKind::Reciprocal => format!("1/({})", self.source),
            IntegrandKind::Plain => format!("{}", self.source),
        };
        write!(f, "int[{} from {}]({})", self.var, self.anchor, body)
    }
}
