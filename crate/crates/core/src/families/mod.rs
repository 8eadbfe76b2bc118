//! Closed-form Killing-field families for the dependence patterns of a
//! diagonal metric.
//!
//! Each [`FamilyCase`] describes a metric shape together with the general
//! Killing field for that shape, parameterised by a handful of real
//! constants. [`build_family`] instantiates one member; [`enumerate_basis`]
//! returns the generators obtained by switching on one constant at a time.
//!
//! Antiderivatives that have no elementary form are carried as
//! [`Expr::Integral`] nodes backed by adaptive quadrature, so every family
//! member evaluates through the same jet interface as a parsed expression.

mod antiderivative;
mod curvature;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use antiderivative::{Antiderivative, IntegrandKind, QUAD_TOL};
pub use curvature::{curvature_constant_k, lambda_profile, CurvatureK, K_CONSTANCY_REL, K_ZERO_TOL};

use crate::error::{Error, Result};
use crate::expr::{self, add, div, mul, neg, sub, Expr, Func, Var};
use crate::geometry::{
    Basis, DependenceProfile, DiagonalMetric, Region, VectorField, VALIDATION_GRID,
};

/// Nodes in each antiderivative's warm-up table.
const ANTIDERIVATIVE_NODES: usize = 33;
/// Samples of `x2` used to test constancy of `k`.
const K_SAMPLES: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyCase {
    /// `f1(x1)`, `f2(x2)`, components depending on their own variable:
    /// constant frame components.
    #[serde(rename = "SeparableDiag")]
    SeparableDiag,
    /// Both `f_i` depend on `x1` and `f2` is constant: `V = (c1, c2)`.
    #[serde(rename = "BothX1_i")]
    BothX1ConstF2,
    /// Both `f_i` depend on `x1`: `V = (0, c2 / f2)`.
    #[serde(rename = "BothX1_ii")]
    BothX1Reciprocal,
    /// `f1 = k1`, `f2 = k2`: `V^1 = (k F1 + c1)/f1`, `V^2 = -(k F2 + c2)/f2`
    /// with `F_i' = f_i^2`.
    #[serde(rename = "Crossed_case1")]
    CrossedBothConst,
    /// `f1` constant, `f2(x1)`: `V = (0, -c2 / f2)`.
    #[serde(rename = "Crossed_case2")]
    CrossedF1Const,
    /// `f1(x2)`, `f2` constant: `V = (c1 / f1, 0)`.
    #[serde(rename = "Crossed_case3")]
    CrossedF2Const,
    /// `f1(x2)`, `f2(x1)`: the zero field.
    #[serde(rename = "Crossed_case4")]
    CrossedZero,
    /// `f1(x1)`, `f2 = k2`: `V^1 = -(k/k2) x2 + c1`, `V^2 = k F2(x1) + c2`
    /// with `F2' = 1/f1`.
    #[serde(rename = "ConstF2_F1ofX1")]
    ConstF2F1ofX1,
    /// `f1(x2)`, `f2 = k2`: `V^2'' = k V^2` with
    /// `k = -k2^2 (f1'/f1)' / f1^2`, and `V^1` built from `F1' = f1^2`.
    #[serde(rename = "ConstF2_F1ofX2")]
    ConstF2F1ofX2,
    /// `f1 = k1`, `f2 = k2`: `V^1 = -(k/k2) x2 + c1`, `V^2 = (k/k1) x1 + c2`.
    #[serde(rename = "BothConst")]
    BothConst,
    /// Flat plane, coordinate form `(c0 x2 + c1, -(c0 x1 + c2))`.
    #[serde(rename = "Euclidean")]
    Euclidean,
}

impl FamilyCase {
    pub const ALL: [FamilyCase; 11] = [
        FamilyCase::SeparableDiag,
        FamilyCase::BothX1ConstF2,
        FamilyCase::BothX1Reciprocal,
        FamilyCase::CrossedBothConst,
        FamilyCase::CrossedF1Const,
        FamilyCase::CrossedF2Const,
        FamilyCase::CrossedZero,
        FamilyCase::ConstF2F1ofX1,
        FamilyCase::ConstF2F1ofX2,
        FamilyCase::BothConst,
        FamilyCase::Euclidean,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyCase::SeparableDiag => "SeparableDiag",
            FamilyCase::BothX1ConstF2 => "BothX1_i",
            FamilyCase::BothX1Reciprocal => "BothX1_ii",
            FamilyCase::CrossedBothConst => "Crossed_case1",
            FamilyCase::CrossedF1Const => "Crossed_case2",
            FamilyCase::CrossedF2Const => "Crossed_case3",
            FamilyCase::CrossedZero => "Crossed_case4",
            FamilyCase::ConstF2F1ofX1 => "ConstF2_F1ofX1",
            FamilyCase::ConstF2F1ofX2 => "ConstF2_F1ofX2",
            FamilyCase::BothConst => "BothConst",
            FamilyCase::Euclidean => "Euclidean",
        }
    }

    /// Whether `params.k` is a free constant of the family.
    pub fn uses_k(self) -> bool {
        matches!(
            self,
            FamilyCase::CrossedBothConst | FamilyCase::ConstF2F1ofX1 | FamilyCase::BothConst
        )
    }

    /// Required length of `params.c`.
    pub fn c_len(self) -> usize {
        match self {
            FamilyCase::CrossedZero => 0,
            FamilyCase::BothX1Reciprocal | FamilyCase::CrossedF1Const | FamilyCase::CrossedF2Const => 1,
            FamilyCase::SeparableDiag
            | FamilyCase::BothX1ConstF2
            | FamilyCase::CrossedBothConst
            | FamilyCase::ConstF2F1ofX1
            | FamilyCase::BothConst => 2,
            FamilyCase::ConstF2F1ofX2 | FamilyCase::Euclidean => 3,
        }
    }

    pub fn free_constants(self) -> usize {
        self.c_len() + usize::from(self.uses_k())
    }

    /// Names of the entries of `params.c`, in order.
    pub fn c_names(self) -> &'static [&'static str] {
        match self {
            FamilyCase::CrossedZero => &[],
            FamilyCase::BothX1Reciprocal | FamilyCase::CrossedF1Const => &["c2"],
            FamilyCase::CrossedF2Const => &["c1"],
            FamilyCase::ConstF2F1ofX2 => &["c1", "c2", "c0"],
            FamilyCase::Euclidean => &["c0", "c1", "c2"],
            _ => &["c1", "c2"],
        }
    }

    fn describe(self) -> (&'static str, &'static str) {
        match self {
            FamilyCase::SeparableDiag => (
                "f1 = f1(x1), f2 = f2(x2), V^i = V^i(x^i)",
                "V^1 = c1, V^2 = c2 in the orthonormal frame",
            ),
            FamilyCase::BothX1ConstF2 => (
                "f1 = f1(x1), f2 constant, V^i = V^i(x1)",
                "V^1 = c1, V^2 = c2 in the orthonormal frame",
            ),
            FamilyCase::BothX1Reciprocal => (
                "f1 = f1(x1), f2 = f2(x1), V^i = V^i(x1)",
                "V^1 = 0, V^2 = c2 / f2",
            ),
            FamilyCase::CrossedBothConst => (
                "f1 = k1, f2 = k2 constants, V^1 = V^1(x2), V^2 = V^2(x1)",
                "V^1 = (k F1 + c1)/f1, V^2 = -(k F2 + c2)/f2 with F_i' = f_i^2",
            ),
            FamilyCase::CrossedF1Const => (
                "f1 constant, f2 = f2(x1), V^1 = 0",
                "V^1 = 0, V^2 = -c2 / f2",
            ),
            FamilyCase::CrossedF2Const => (
                "f1 = f1(x2), f2 constant, V^2 = 0",
                "V^1 = c1 / f1, V^2 = 0",
            ),
            FamilyCase::CrossedZero => (
                "f1 = f1(x2), f2 = f2(x1), V^1 = V^2 = 0",
                "V = 0",
            ),
            FamilyCase::ConstF2F1ofX1 => (
                "f1 = f1(x1), f2 = k2 constant",
                "V^1 = -(k/k2) x2 + c1, V^2 = k F2(x1) + c2 with F2' = 1/f1",
            ),
            FamilyCase::ConstF2F1ofX2 => (
                "f1 = f1(x2), f2 = k2 constant",
                "V^2'' = k V^2 with k = -k2^2 (f1'/f1)'/f1^2; \
                 V^1 = -F1 (V^2)'/(k2 f1) + (lambda v2 + c0)/f1 with F1' = f1^2, v2' = V^2",
            ),
            FamilyCase::BothConst => (
                "f1 = k1, f2 = k2 constants",
                "V^1 = -(k/k2) x2 + c1, V^2 = (k/k1) x1 + c2",
            ),
            FamilyCase::Euclidean => (
                "f1 = f2 = 1",
                "coordinate components (c0 x2 + c1, -(c0 x1 + c2))",
            ),
        }
    }
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyCase::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| {
                let tags: Vec<_> = FamilyCase::ALL.iter().map(|c| c.tag()).collect();
                Error::Input(format!("unknown family case `{s}` (expected one of {})", tags.join(", ")))
            })
    }
}

/// Free constants of a family member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    #[serde(default)]
    pub k: f64,
    #[serde(default)]
    pub c: Vec<f64>,
    /// Lower limit of every antiderivative in the construction.
    #[serde(default)]
    pub anchor: f64,
}

impl FamilyParams {
    pub fn new(k: f64, c: Vec<f64>) -> Self {
        FamilyParams { k, c, anchor: 0.0 }
    }

    fn check(&self, case: FamilyCase) -> Result<()> {
        if self.c.len() != case.c_len() {
            return Err(Error::Params(format!(
                "{case} takes {} constant(s) in c ({}), got {}",
                case.c_len(),
                case.c_names().join(", "),
                self.c.len()
            )));
        }
        if !self.k.is_finite() || !self.anchor.is_finite() || self.c.iter().any(|v| !v.is_finite()) {
            return Err(Error::Params("k, c and anchor must be finite".into()));
        }
        Ok(())
    }
}

/// Human-readable account of which classification result a field came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub case: FamilyCase,
    pub hypothesis: &'static str,
    pub result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<&'static str>,
}

/// A constructed family member together with the quantities derived while
/// building it.
#[derive(Debug, Clone)]
pub struct Family {
    pub field: VectorField,
    pub provenance: Provenance,
    /// Curvature constant used by `ConstF2_F1ofX2`.
    pub k: Option<f64>,
    /// Integration constant `lambda` used by `ConstF2_F1ofX2`.
    pub lambda: Option<f64>,
}

struct Shape {
    k1: f64,
    k2: f64,
}

fn inadmissible<T>(reason: impl Into<String>) -> Result<T> {
    Err(Error::Inadmissible(reason.into()))
}

fn require(cond: bool, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        inadmissible(reason)
    }
}

fn shape(case: FamilyCase, m: &DiagonalMetric, region: &Region) -> Result<Shape> {
    m.validate_on(region, VALIDATION_GRID)?;
    let profile = DependenceProfile::sample(m, &region.lattice(VALIDATION_GRID))?;
    let (f1, f2) = (profile.f1, profile.f2);
    let f1_const = || require(f1.is_constant(), "f1 not constant on region");
    let f2_const = || require(f2.is_constant(), "f2 not constant on region");
    let f1_no_x1 = || require(f1.free_of_x1(), "f1 depends on x1 on region");
    let f1_no_x2 = || require(f1.free_of_x2(), "f1 depends on x2 on region");
    let f2_no_x1 = || require(f2.free_of_x1(), "f2 depends on x1 on region");
    let f2_no_x2 = || require(f2.free_of_x2(), "f2 depends on x2 on region");
    match case {
        FamilyCase::SeparableDiag => {
            f1_no_x2()?;
            f2_no_x1()?;
        }
        FamilyCase::BothX1ConstF2 => {
            f1_no_x2()?;
            f2_const()?;
        }
        FamilyCase::BothX1Reciprocal => {
            f1_no_x2()?;
            f2_no_x2()?;
        }
        FamilyCase::CrossedBothConst | FamilyCase::BothConst | FamilyCase::Euclidean => {
            f1_const()?;
            f2_const()?;
        }
        FamilyCase::CrossedF1Const => {
            f1_const()?;
            f2_no_x2()?;
        }
        FamilyCase::CrossedF2Const | FamilyCase::ConstF2F1ofX2 => {
            f1_no_x1()?;
            f2_const()?;
        }
        FamilyCase::CrossedZero => {
            f1_no_x1()?;
            f2_no_x2()?;
        }
        FamilyCase::ConstF2F1ofX1 => {
            f1_no_x2()?;
            f2_const()?;
        }
    }
    let c = region.center();
    let k1 = expr::eval(&m.f1, c)?;
    let k2 = expr::eval(&m.f2, c)?;
    if case == FamilyCase::Euclidean && ((k1.abs() - 1.0).abs() > 1e-12 || (k2.abs() - 1.0).abs() > 1e-12) {
        return inadmissible("Euclidean case needs f1 = f2 = 1");
    }
    Ok(Shape { k1, k2 })
}

fn x1() -> Expr {
    Expr::Var(Var::X1)
}

fn x2() -> Expr {
    Expr::Var(Var::X2)
}

fn lit(v: f64) -> Expr {
    Expr::Lit(v)
}

/// `a * x + b`, folded.
fn affine(a: f64, x: Expr, b: f64) -> Expr {
    add(mul(lit(a), x), lit(b))
}

fn frame(c1: Expr, c2: Expr) -> VectorField {
    VectorField::new(Basis::Frame, c1, c2)
}

fn integral(kind: IntegrandKind, source: &Expr, var: Var, anchor: f64, region: &Region) -> Result<Expr> {
    let (lo, hi) = match var {
        Var::X1 => (region.xmin, region.xmax),
        Var::X2 => (region.ymin, region.ymax),
    };
    let a = Antiderivative::new(kind, source.clone(), var, anchor).warmed(lo, hi, ANTIDERIVATIVE_NODES)?;
    Ok(Expr::Integral(Arc::new(a)))
}

/// Builds the family member of `case` with constants `params` on the
/// default region `[-1, 1]^2`.
pub fn build_family(case: FamilyCase, params: &FamilyParams, m: &DiagonalMetric) -> Result<VectorField> {
    Ok(construct_family(case, params, m, &Region::default())?.field)
}

/// Builds a family member, checking admissibility of `case` for `m` on
/// `region`. The returned field is in the frame basis except for
/// `Euclidean`, which is naturally written in coordinates.
pub fn construct_family(
    case: FamilyCase,
    params: &FamilyParams,
    m: &DiagonalMetric,
    region: &Region,
) -> Result<Family> {
    params.check(case)?;
    let shape = shape(case, m, region)?;
    let (k1, k2, k) = (shape.k1, shape.k2, params.k);
    let c = &params.c;
    let mut subcase = None;
    let mut k_used = None;
    let mut lambda = None;
    let field = match case {
        FamilyCase::SeparableDiag | FamilyCase::BothX1ConstF2 => frame(lit(c[0]), lit(c[1])),
        FamilyCase::BothX1Reciprocal => frame(lit(0.0), div(lit(c[0]), m.f2.clone())),
        FamilyCase::CrossedBothConst => {
            // F_i = k_i^2 x (anchored at `anchor`) is exact for constant f_i
            let a = params.anchor;
            frame(
                affine(k * k1, x2(), (c[0] - k * k1 * k1 * a) / k1),
                affine(-k * k2, x1(), -(c[1] - k * k2 * k2 * a) / k2),
            )
        }
        FamilyCase::CrossedF1Const => frame(lit(0.0), div(lit(-c[0]), m.f2.clone())),
        FamilyCase::CrossedF2Const => frame(div(lit(c[0]), m.f1.clone()), lit(0.0)),
        FamilyCase::CrossedZero => VectorField::zero(Basis::Frame),
        FamilyCase::ConstF2F1ofX1 => {
            let f2_anti = integral(IntegrandKind::Reciprocal, &m.f1, Var::X1, params.anchor, region)?;
            frame(
                affine(-k / k2, x2(), c[0]),
                add(mul(lit(k), f2_anti), lit(c[1])),
            )
        }
        FamilyCase::BothConst => frame(affine(-k / k2, x2(), c[0]), affine(k / k1, x1(), c[1])),
        FamilyCase::Euclidean => VectorField::new(
            Basis::Coordinate,
            affine(c[0], x2(), c[1]),
            neg(affine(c[0], x1(), c[2])),
        ),
        FamilyCase::ConstF2F1ofX2 => {
            let built = const_f2_f1_of_x2(m, params, region, k2)?;
            subcase = Some(built.subcase);
            k_used = built.k;
            lambda = built.lambda;
            built.field
        }
    };
    let (hypothesis, result) = case.describe();
    Ok(Family {
        field,
        provenance: Provenance {
            case,
            hypothesis,
            result,
            subcase,
        },
        k: k_used,
        lambda,
    })
}

struct ConstF2Build {
    field: VectorField,
    subcase: &'static str,
    k: Option<f64>,
    lambda: Option<f64>,
}

fn const_f2_f1_of_x2(m: &DiagonalMetric, params: &FamilyParams, region: &Region, k2: f64) -> Result<ConstF2Build> {
    let (c1, c2, c0) = (params.c[0], params.c[1], params.c[2]);
    let samples: Vec<f64> = (0..K_SAMPLES)
        .map(|i| region.ymin + (region.ymax - region.ymin) * i as f64 / (K_SAMPLES - 1) as f64)
        .collect();
    let curv = curvature_constant_k(m, &samples)?;
    if !curv.constant {
        if c1 == 0.0 && c2 == 0.0 {
            return Ok(ConstF2Build {
                field: frame(div(lit(c0), m.f1.clone()), lit(0.0)),
                subcase: "V^2 = 0 (k not constant)",
                k: None,
                lambda: None,
            });
        }
        return Err(Error::NonConstantK {
            mean: curv.k,
            spread: curv.max - curv.min,
        });
    }
    let k = if curv.k.abs() <= K_ZERO_TOL { 0.0 } else { curv.k };
    if params.k != 0.0 && params.k.signum() != k.signum() {
        return inadmissible(format!(
            "requested k = {} but the metric has k = {k}",
            params.k
        ));
    }
    // V2, (V2)' and an antiderivative v2 of V2, all in x1
    let (v2, dv2, anti_v2, subcase) = if k == 0.0 {
        (
            affine(c1, x1(), c2),
            lit(c1),
            add(mul(lit(0.5 * c1), expr::pow(x1(), lit(2.0))), mul(lit(c2), x1())),
            "linear (k = 0)",
        )
    } else if k > 0.0 {
        let s = k.sqrt();
        let ep = expr::func(Func::Exp, mul(lit(s), x1()));
        let em = expr::func(Func::Exp, mul(lit(-s), x1()));
        (
            add(mul(lit(c1), ep.clone()), mul(lit(c2), em.clone())),
            sub(mul(lit(s * c1), ep.clone()), mul(lit(s * c2), em.clone())),
            sub(mul(lit(c1 / s), ep), mul(lit(c2 / s), em)),
            "exponential (k > 0)",
        )
    } else {
        let s = (-k).sqrt();
        let co = expr::func(Func::Cos, mul(lit(s), x1()));
        let si = expr::func(Func::Sin, mul(lit(s), x1()));
        (
            add(mul(lit(c1), co.clone()), mul(lit(c2), si.clone())),
            sub(mul(lit(s * c2), co.clone()), mul(lit(s * c1), si.clone())),
            sub(mul(lit(c1 / s), si), mul(lit(c2 / s), co)),
            "trigonometric (k < 0)",
        )
    };
    let f1_anti = integral(IntegrandKind::Square, &m.f1, Var::X2, params.anchor, region)?;
    let lam = lambda_profile(m, k, &f1_anti, &[region.center()[1]])?[0];
    let f1 = m.f1.clone();
    let v1 = add(
        div(mul(neg(f1_anti), dv2), mul(lit(k2), f1.clone())),
        div(add(mul(lit(lam), anti_v2), lit(c0)), f1),
    );
    Ok(ConstF2Build {
        field: frame(v1, v2),
        subcase,
        k: Some(k),
        lambda: Some(lam),
    })
}

/// Generators of `case` on `m`: one field per free constant, obtained by
/// setting that constant to 1 and the others to 0 (order: `k` first when
/// it is free, then `c`). For `ConstF2_F1ofX2` on a metric whose `k` is
/// not constant only the `c0` generator exists.
pub fn enumerate_basis(case: FamilyCase, m: &DiagonalMetric) -> Result<Vec<VectorField>> {
    enumerate_basis_on(case, m, &Region::default())
}

pub fn enumerate_basis_on(case: FamilyCase, m: &DiagonalMetric, region: &Region) -> Result<Vec<VectorField>> {
    let mut out = Vec::with_capacity(case.free_constants());
    let n = case.free_constants();
    for slot in 0..n {
        let mut params = FamilyParams::new(0.0, vec![0.0; case.c_len()]);
        if case.uses_k() && slot == 0 {
            params.k = 1.0;
        } else {
            params.c[slot - usize::from(case.uses_k())] = 1.0;
        }
        match construct_family(case, &params, m, region) {
            Ok(f) => out.push(f.field),
            Err(Error::NonConstantK { .. }) if case == FamilyCase::ConstF2F1ofX2 => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
