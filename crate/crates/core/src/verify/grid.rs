use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Point;
use crate::geometry::{killing_residual_frame, DiagonalMetric, KillingResidual, Region, VectorField};

/// Largest `|r_ij|` seen for each frame component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentMax {
    pub r11: f64,
    pub r22: f64,
    pub r12: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub region: Region,
    pub resolution: [usize; 2],
    pub max_abs: f64,
    pub argmax: Point,
    /// Residual at `argmax`.
    pub residual_at_argmax: KillingResidual,
    pub component_max: ComponentMax,
    pub tol: f64,
    pub pass: bool,
}

/// Sweeps the frame residual over an `n × n` lattice of `region`.
///
/// Points are evaluated in parallel and reduced in lattice order, so the
/// reported `argmax` is the first maximiser in row-major order and the
/// first domain error in that order is the one returned.
pub fn grid_residual_check(
    m: &DiagonalMetric,
    v: &VectorField,
    region: &Region,
    n: usize,
    tol: f64,
) -> Result<GridReport> {
    if n < 2 {
        return Err(Error::Input(format!("grid needs at least 2 points per axis, got {n}")));
    }
    region.validate()?;
    let points = region.lattice(n);
    let residuals: Vec<_> = points
        .par_iter()
        .map(|&p| killing_residual_frame(m, v, p))
        .collect();

    let mut max_abs = -1.0;
    let mut argmax = points[0];
    let mut at_max = KillingResidual { r11: 0.0, r22: 0.0, r12: 0.0 };
    let mut comp = ComponentMax { r11: 0.0, r22: 0.0, r12: 0.0 };
    for (p, r) in points.iter().zip(residuals) {
        let r = r?;
        let a = r.max_abs();
        if a.is_nan() {
            return Err(Error::Input(format!("residual is NaN at ({}, {})", p[0], p[1])));
        }
        if a > max_abs {
            max_abs = a;
            argmax = *p;
            at_max = r;
        }
        comp.r11 = comp.r11.max(r.r11.abs());
        comp.r22 = comp.r22.max(r.r22.abs());
        comp.r12 = comp.r12.max(r.r12.abs());
    }
    Ok(GridReport {
        region: *region,
        resolution: [n, n],
        max_abs,
        argmax,
        residual_at_argmax: at_max,
        component_max: comp,
        tol,
        pass: max_abs <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Basis;

    #[test]
    fn zero_field_passes_exactly() {
        let m = DiagonalMetric::parse("exp(x1*x2)", "2+sin(x1)").unwrap();
        let r = grid_residual_check(&m, &VectorField::zero(Basis::Frame), &Region::default(), 5, 0.0).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_abs, 0.0);
        assert_eq!(r.argmax, [-1.0, -1.0]);
    }

    #[test]
    fn argmax_is_first_occurrence() {
        // r11 = 2 everywhere for V = (x1, 0) on the flat plane
        let m = DiagonalMetric::euclidean();
        let v = VectorField::parse(Basis::Frame, "x1", "0").unwrap();
        let r = grid_residual_check(&m, &v, &Region::default(), 3, 1e-9).unwrap();
        assert_eq!(r.max_abs, 2.0);
        assert_eq!(r.argmax, [-1.0, -1.0]);
        assert!(!r.pass);
    }

    #[test]
    fn rejects_tiny_grid() {
        let m = DiagonalMetric::euclidean();
        assert!(grid_residual_check(&m, &VectorField::zero(Basis::Frame), &Region::default(), 1, 1e-9).is_err());
    }

    #[test]
    fn domain_error_names_point() {
        let m = DiagonalMetric::parse("1", "1").unwrap();
        let v = VectorField::parse(Basis::Frame, "ln(x1)", "0").unwrap();
        let err = grid_residual_check(&m, &v, &Region::default(), 3, 1e-9).unwrap_err();
        assert!(err.to_string().contains("(-1, -1)"), "{err}");
    }
}
