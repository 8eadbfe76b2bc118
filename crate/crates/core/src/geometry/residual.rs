use serde::Serialize;

use super::{DiagonalMetric, VectorField};
use crate::error::EvalError;
use crate::expr::{Jet2, Point};

/// `l12 = (f2/f1) ∂2 f1` and `l21 = (f1/f2) ∂1 f2` at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameCoeffs {
    pub l12: f64,
    pub l21: f64,
}

pub fn frame_coeffs(m: &DiagonalMetric, p: Point) -> Result<FrameCoeffs, EvalError> {
    let [f1, f2] = m.jets(p)?;
    Ok(coeffs_from_jets(&f1, &f2))
}

fn coeffs_from_jets(f1: &Jet2, f2: &Jet2) -> FrameCoeffs {
    FrameCoeffs {
        l12: f2.value / f1.value * f1.d(1),
        l21: f1.value / f2.value * f2.d(0),
    }
}

/// Levi-Civita connection on the orthonormal frame, each entry as
/// `[E1-coefficient, E2-coefficient]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionTable {
    /// `∇_{E1} E1 = l12 E2`
    pub e1_e1: [f64; 2],
    /// `∇_{E1} E2 = -l12 E1`
    pub e1_e2: [f64; 2],
    /// `∇_{E2} E2 = l21 E1`
    pub e2_e2: [f64; 2],
    /// `∇_{E2} E1 = -l21 E2`
    pub e2_e1: [f64; 2],
}

impl ConnectionTable {
    /// Frame coefficients of `∇_{E1}E2 - ∇_{E2}E1`.
    pub fn torsion_free_bracket(&self) -> [f64; 2] {
        [
            self.e1_e2[0] - self.e2_e1[0],
            self.e1_e2[1] - self.e2_e1[1],
        ]
    }
}

pub fn connection_table(m: &DiagonalMetric, p: Point) -> Result<ConnectionTable, EvalError> {
    let FrameCoeffs { l12, l21 } = frame_coeffs(m, p)?;
    Ok(ConnectionTable {
        e1_e1: [0.0, l12],
        e1_e2: [-l12, 0.0],
        e2_e2: [l21, 0.0],
        e2_e1: [0.0, -l21],
    })
}

/// Frame coefficients of `[E1, E2]`, computed from the coordinate
/// expansion `f1 ∂1(f2) ∂2 - f2 ∂2(f1) ∂1` rather than from `l12`, `l21`.
pub fn lie_bracket_frame(m: &DiagonalMetric, p: Point) -> Result<[f64; 2], EvalError> {
    let [f1, f2] = m.jets(p)?;
    let coord = [-f2.value * f1.d(1), f1.value * f2.d(0)];
    Ok([coord[0] / f1.value, coord[1] / f2.value])
}

/// `(£_V g)(E_i, E_j)` at a point. `r11` and `r22` include the factor 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KillingResidual {
    pub r11: f64,
    pub r22: f64,
    pub r12: f64,
}

impl KillingResidual {
    pub fn max_abs(&self) -> f64 {
        self.r11.abs().max(self.r22.abs()).max(self.r12.abs())
    }

    pub fn components(&self) -> [f64; 3] {
        [self.r11, self.r22, self.r12]
    }
}

/// Frame form of the Killing system:
///
/// ```text
/// r11 = 2 (E1(V^1) - l12 V^2)
/// r22 = 2 (E2(V^2) - l21 V^1)
/// r12 = E1(V^2) + E2(V^1) + l12 V^1 + l21 V^2
/// ```
///
/// Coordinate-basis fields are converted to frame components first.
pub fn killing_residual_frame(
    m: &DiagonalMetric,
    v: &VectorField,
    p: Point,
) -> Result<KillingResidual, EvalError> {
    let [f1, f2] = m.jets(p)?;
    let FrameCoeffs { l12, l21 } = coeffs_from_jets(&f1, &f2);
    let [v1, v2] = v.frame_jets(m, p)?;
    let e1 = |j: &Jet2| f1.value * j.d(0);
    let e2 = |j: &Jet2| f2.value * j.d(1);
    Ok(KillingResidual {
        r11: 2.0 * (e1(&v1) - l12 * v2.value),
        r22: 2.0 * (e2(&v2) - l21 * v1.value),
        r12: e1(&v2) + e2(&v1) + l12 * v1.value + l21 * v2.value,
    })
}

/// Symmetric 2×2 tensor in coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymTensor2 {
    pub t11: f64,
    pub t12: f64,
    pub t22: f64,
}

impl SymTensor2 {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.t11,
            (1, 1) => self.t22,
            _ => self.t12,
        }
    }
}

/// Coordinate form `(£_V g)_ij = V̄^k ∂_k g_ij + g_kj ∂_i V̄^k + g_ik ∂_j V̄^k`
/// for diagonal `g`.
///
/// Related to the frame form by `(£_V g)(E_i, E_j) = f_i f_j (£_V g)_ij`.
pub fn killing_residual_coordinate(
    m: &DiagonalMetric,
    v: &VectorField,
    p: Point,
) -> Result<SymTensor2, EvalError> {
    let [f1, f2] = m.jets(p)?;
    let g11 = (f1 * f1).recip();
    let g22 = (f2 * f2).recip();
    let [w1, w2] = v.coordinate_jets(m, p)?;
    let transport = |g: &Jet2| w1.value * g.d(0) + w2.value * g.d(1);
    Ok(SymTensor2 {
        t11: transport(&g11) + 2.0 * g11.value * w1.d(0),
        t22: transport(&g22) + 2.0 * g22.value * w2.d(1),
        t12: g22.value * w2.d(0) + g11.value * w1.d(1),
    })
}
