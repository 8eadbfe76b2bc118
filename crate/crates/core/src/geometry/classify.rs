use std::fmt;

use serde::{Serialize, Serializer};

use super::DiagonalMetric;
use crate::error::EvalError;
use crate::expr::{eval_jet2, Point};

/// Sampled partials at or below this magnitude count as zero.
pub const EPS_DEP: f64 = 1e-10;

/// Which coordinates a single function was observed to depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dependence {
    Constant,
    X1,
    X2,
    Both,
}

impl Dependence {
    fn from_flags(d1: bool, d2: bool) -> Self {
        match (d1, d2) {
            (false, false) => Dependence::Constant,
            (true, false) => Dependence::X1,
            (false, true) => Dependence::X2,
            (true, true) => Dependence::Both,
        }
    }

    pub fn is_constant(self) -> bool {
        self == Dependence::Constant
    }

    /// Independent of `x1`.
    pub fn free_of_x1(self) -> bool {
        matches!(self, Dependence::Constant | Dependence::X2)
    }

    /// Independent of `x2`.
    pub fn free_of_x2(self) -> bool {
        matches!(self, Dependence::Constant | Dependence::X1)
    }
}

/// Sampled dependence of `f1` and `f2`, plus the largest partials seen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DependenceProfile {
    pub f1: Dependence,
    pub f2: Dependence,
    /// `max |∂_j f_i|` over the samples, indexed `[i][j]`.
    pub max_partials: [[f64; 2]; 2],
}

/// Dependence pattern of the pair `(f1, f2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DependenceLabel {
    F1ofX1F2ofX2,
    F1ofX1F2ofX1,
    F1ofX2F2ofX1,
    F1ofX2F2Const,
    F1ofX1F2Const,
    BothConst,
    General,
}

impl DependenceLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            DependenceLabel::F1ofX1F2ofX2 => "f1(x1)&f2(x2)",
            DependenceLabel::F1ofX1F2ofX1 => "f1(x1)&f2(x1)",
            DependenceLabel::F1ofX2F2ofX1 => "f1(x2)&f2(x1)",
            DependenceLabel::F1ofX2F2Const => "f1(x2)&f2 const",
            DependenceLabel::F1ofX1F2Const => "f1(x1)&f2 const",
            DependenceLabel::BothConst => "both const",
            DependenceLabel::General => "general",
        }
    }
}

impl fmt::Display for DependenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for DependenceLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl DependenceProfile {
    pub fn sample(m: &DiagonalMetric, samples: &[Point]) -> Result<Self, EvalError> {
        let mut max = [[0.0f64; 2]; 2];
        for &p in samples {
            for (i, f) in [&m.f1, &m.f2].into_iter().enumerate() {
                let j = eval_jet2(f, p)?;
                for (m, g) in max[i].iter_mut().zip(j.grad) {
                    *m = m.max(g.abs());
                }
            }
        }
        let dep = |i: usize| Dependence::from_flags(max[i][0] > EPS_DEP, max[i][1] > EPS_DEP);
        Ok(DependenceProfile {
            f1: dep(0),
            f2: dep(1),
            max_partials: max,
        })
    }

    /// Most specific label; constants are recognised before single-variable
    /// dependence.
    pub fn label(&self) -> DependenceLabel {
        use DependenceLabel::*;
        let (f1, f2) = (self.f1, self.f2);
        if f1.is_constant() && f2.is_constant() {
            BothConst
        } else if f2.is_constant() && f1.free_of_x1() {
            F1ofX2F2Const
        } else if f2.is_constant() && f1.free_of_x2() {
            F1ofX1F2Const
        } else if f1.free_of_x2() && f2.free_of_x1() {
            F1ofX1F2ofX2
        } else if f1.free_of_x2() && f2.free_of_x2() {
            F1ofX1F2ofX1
        } else if f1.free_of_x1() && f2.free_of_x2() {
            F1ofX2F2ofX1
        } else {
            General
        }
    }
}

/// Labels the dependence pattern of `m` by testing `|∂_j f_i| ≤ EPS_DEP` at
/// every sample point.
pub fn classify_dependence(
    m: &DiagonalMetric,
    samples: &[Point],
) -> Result<DependenceLabel, EvalError> {
    Ok(DependenceProfile::sample(m, samples)?.label())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Region;

    fn label(f1: &str, f2: &str) -> DependenceLabel {
        let m = DiagonalMetric::parse(f1, f2).unwrap();
        classify_dependence(&m, &Region::default().lattice(21)).unwrap()
    }

    #[test]
    fn labels() {
        use DependenceLabel::*;
        assert_eq!(label("exp(x1)", "exp(x2)"), F1ofX1F2ofX2);
        assert_eq!(label("1", "1"), BothConst);
        assert_eq!(label("exp(x2)", "1"), F1ofX2F2Const);
        assert_eq!(label("exp(x1)", "1"), F1ofX1F2Const);
        assert_eq!(label("exp(-x1)", "exp(x1)"), F1ofX1F2ofX1);
        assert_eq!(label("cosh(x2)", "exp(x1)"), F1ofX2F2ofX1);
        assert_eq!(label("exp(x1+x2)", "1"), General);
        assert_eq!(label("exp(x2)", "cosh(x2)"), General);
        // constant f1 with f2(x1): the first listed pattern that fits
        assert_eq!(label("2", "exp(x1)"), F1ofX1F2ofX1);
    }

    #[test]
    fn cancelling_dependence_is_constant() {
        // x1 - x1 has exactly zero partials through jets
        assert_eq!(label("2+x1-x1", "3"), DependenceLabel::BothConst);
    }

    #[test]
    fn label_strings() {
        assert_eq!(DependenceLabel::F1ofX2F2Const.to_string(), "f1(x2)&f2 const");
        assert_eq!(
            serde_json::to_string(&DependenceLabel::General).unwrap(),
            "\"general\""
        );
    }
}
