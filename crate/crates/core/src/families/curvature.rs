use serde::Serialize;

use crate::error::Result;
use crate::expr::{self, eval_jet2, Expr};
use crate::geometry::DiagonalMetric;

/// `k` counts as constant when its sampled spread is within this fraction
/// of `1 + |mean|`.
pub const K_CONSTANCY_REL: f64 = 1e-8;
/// `|k|` at or below this is treated as exactly zero.
pub const K_ZERO_TOL: f64 = 1e-9;

/// Sampled value of `k = -k2^2 (f1''f1 - f1'^2) / f1^4` along `x2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureK {
    /// Mean over the samples.
    pub k: f64,
    pub min: f64,
    pub max: f64,
    pub constant: bool,
}

/// Evaluates `k` at `x1 = 0` and each `x2` in `samples`. The metric must
/// have constant `f2 = k2` and `f1 = f1(x2)`; this is not checked here.
pub fn curvature_constant_k(m: &DiagonalMetric, samples: &[f64]) -> Result<CurvatureK> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &t in samples {
        let p = [0.0, t];
        let k2 = expr::eval(&m.f2, p)?;
        let j = eval_jet2(&m.f1, p)?;
        let (f, df, ddf) = (j.value, j.grad[1], j.hess[2]);
        let k = -k2 * k2 * (ddf * f - df * df) / (f * f * f * f);
        min = min.min(k);
        max = max.max(k);
        sum += k;
    }
    let mean = sum / samples.len().max(1) as f64;
    Ok(CurvatureK {
        k: mean,
        min,
        max,
        constant: max - min <= K_CONSTANCY_REL * (1.0 + mean.abs()),
    })
}

/// `lambda(x2) = k2 (f1'/f1)(x2) + k F1(x2) / k2` at each sample, where
/// `f1_anti` is an antiderivative of `f1^2` in `x2`. The construction is
/// consistent exactly when this is constant.
pub fn lambda_profile(m: &DiagonalMetric, k: f64, f1_anti: &Expr, samples: &[f64]) -> Result<Vec<f64>> {
    samples
        .iter()
        .map(|&t| {
            let p = [0.0, t];
            let k2 = expr::eval(&m.f2, p)?;
            let j = eval_jet2(&m.f1, p)?;
            let big_f = expr::eval(f1_anti, p)?;
            Ok(k2 * j.grad[1] / j.value + k * big_f / k2)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_of(f1: &str, f2: &str) -> CurvatureK {
        let m = DiagonalMetric::parse(f1, f2).unwrap();
        let s: Vec<f64> = (0..21).map(|i| -1.0 + i as f64 / 10.0).collect();
        curvature_constant_k(&m, &s).unwrap()
    }

    #[test]
    fn exponential_has_zero_k() {
        let c = k_of("exp(x2)", "1");
        assert!(c.constant);
        assert!(c.k.abs() < 1e-12);
    }

    #[test]
    fn sech_has_positive_k() {
        // f1 = 1/cosh: (f1'/f1)' = -sech^2 = -f1^2, so k = k2^2
        let c = k_of("1/cosh(x2)", "2");
        assert!(c.constant);
        assert!((c.k - 4.0).abs() < 1e-12, "{}", c.k);
    }

    #[test]
    fn sec_has_negative_k() {
        // f1 = 1/cos: (f1'/f1)' = sec^2 = f1^2, so k = -k2^2
        let c = k_of("1/cos(x2)", "1");
        assert!(c.constant);
        assert!((c.k + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosh_has_varying_k() {
        let c = k_of("cosh(x2)", "1");
        assert!(!c.constant);
        assert!(c.max - c.min > 0.1);
    }
}
