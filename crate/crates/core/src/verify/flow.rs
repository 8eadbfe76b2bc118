use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Point;
use crate::geometry::{DiagonalMetric, SymTensor2, VectorField};

/// Halving the step must shrink the deviation by at least this factor.
pub const REFINEMENT_FACTOR: f64 = 8.0;
/// Deviations at or below this are treated as converged regardless of ratio.
pub const DEVIATION_FLOOR: f64 = 1e-12;

type Mat2 = [[f64; 2]; 2];

#[derive(Debug, Clone, Copy)]
struct State {
    x: Point,
    j: Mat2,
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        let mut out = *self;
        for i in 0..2 {
            out.x[i] += h * d.x[i];
            for k in 0..2 {
                out.j[i][k] += h * d.j[i][k];
            }
        }
        out
    }
}

fn rhs(m: &DiagonalMetric, v: &VectorField, s: &State) -> Result<State> {
    let w = v.coordinate_jets(m, s.x)?;
    let mut out = State { x: [w[0].value, w[1].value], j: [[0.0; 2]; 2] };
    for (row, wi) in out.j.iter_mut().zip(&w) {
        for (k, r) in row.iter_mut().enumerate() {
            *r = wi.d(0) * s.j[0][k] + wi.d(1) * s.j[1][k];
        }
    }
    if !(out.x.iter().all(|v| v.is_finite()) && out.j.iter().flatten().all(|v| v.is_finite())) {
        return Err(Error::Input(format!(
            "flow left the evaluable domain near ({}, {})",
            s.x[0], s.x[1]
        )));
    }
    Ok(out)
}

fn rk4_step(m: &DiagonalMetric, v: &VectorField, s: &State, h: f64) -> Result<State> {
    let k1 = rhs(m, v, s)?;
    let k2 = rhs(m, v, &s.axpy(0.5 * h, &k1))?;
    let k3 = rhs(m, v, &s.axpy(0.5 * h, &k2))?;
    let k4 = rhs(m, v, &s.axpy(h, &k3))?;
    let mut out = *s;
    for i in 0..2 {
        out.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
        for k in 0..2 {
            out.j[i][k] += h / 6.0 * (k1.j[i][k] + 2.0 * k2.j[i][k] + 2.0 * k3.j[i][k] + k4.j[i][k]);
        }
    }
    Ok(out)
}

/// Integrates the flow of `v` and its variational equation from `p` for
/// time `t` in `n_steps` classical RK4 steps.
fn integrate(m: &DiagonalMetric, v: &VectorField, p: Point, t: f64, n_steps: usize) -> Result<State> {
    let h = t / n_steps as f64;
    let mut s = State { x: p, j: [[1.0, 0.0], [0.0, 1.0]] };
    for _ in 0..n_steps {
        s = rk4_step(m, v, &s, h)?;
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowReport {
    pub start: Point,
    pub t: f64,
    pub steps: usize,
    pub end: Point,
    /// Flow Jacobian, row `i` holding `∂φ^i/∂x^k`.
    pub jacobian: Mat2,
    /// `J^T G(φ_t(p)) J`.
    pub transported: SymTensor2,
    /// `G(p)`.
    pub reference: SymTensor2,
    /// `transported - reference`.
    pub difference: SymTensor2,
    pub max_deviation: f64,
    pub tol: f64,
    pub pass: bool,
}

fn check_args(t: f64, n_steps: usize) -> Result<()> {
    if n_steps == 0 {
        return Err(Error::Input("flow needs at least one step".into()));
    }
    if !t.is_finite() {
        return Err(Error::Input(format!("flow time must be finite, got {t}")));
    }
    Ok(())
}

/// Checks that the flow of `v` pulls `g` back to itself: compares
/// `J^T G(φ_t(p)) J` with `G(p)` component by component.
pub fn flow_isometry_check(
    m: &DiagonalMetric,
    v: &VectorField,
    p: Point,
    t: f64,
    n_steps: usize,
    tol: f64,
) -> Result<FlowReport> {
    check_args(t, n_steps)?;
    let end = integrate(m, v, p, t, n_steps)?;
    let [g1, g2] = m.components(end.x)?;
    let j = end.j;
    let pull = |a: usize, b: usize| g1 * j[0][a] * j[0][b] + g2 * j[1][a] * j[1][b];
    let transported = SymTensor2 { t11: pull(0, 0), t12: pull(0, 1), t22: pull(1, 1) };
    let [r1, r2] = m.components(p)?;
    let reference = SymTensor2 { t11: r1, t12: 0.0, t22: r2 };
    let difference = SymTensor2 {
        t11: transported.t11 - reference.t11,
        t12: transported.t12,
        t22: transported.t22 - reference.t22,
    };
    let max_deviation = difference.t11.abs().max(difference.t12.abs()).max(difference.t22.abs());
    Ok(FlowReport {
        start: p,
        t,
        steps: n_steps,
        end: end.x,
        jacobian: j,
        transported,
        reference,
        difference,
        max_deviation,
        tol,
        pass: max_deviation <= tol,
    })
}

/// Deviation at `n_steps / 2` and `n_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Refinement {
    pub coarse_steps: usize,
    pub coarse: f64,
    pub fine_steps: usize,
    pub fine: f64,
    /// `coarse / fine`; infinite when `fine` is exactly 0.
    pub ratio: f64,
    /// `ratio >= REFINEMENT_FACTOR` or `fine <= DEVIATION_FLOOR`.
    pub converging: bool,
}

/// Reruns the flow check with half the steps and compares deviations.
pub fn flow_refinement(
    m: &DiagonalMetric,
    v: &VectorField,
    p: Point,
    t: f64,
    n_steps: usize,
) -> Result<Refinement> {
    if n_steps < 2 {
        return Err(Error::Input("refinement needs at least two steps".into()));
    }
    let coarse_steps = n_steps / 2;
    let coarse = flow_isometry_check(m, v, p, t, coarse_steps, 0.0)?.max_deviation;
    let fine = flow_isometry_check(m, v, p, t, n_steps, 0.0)?.max_deviation;
    let ratio = if fine == 0.0 { f64::INFINITY } else { coarse / fine };
    Ok(Refinement {
        coarse_steps,
        coarse,
        fine_steps: n_steps,
        fine,
        ratio,
        converging: ratio >= REFINEMENT_FACTOR || fine <= DEVIATION_FLOOR,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingReport {
    /// `g(V, W)` at the start and after each step.
    pub values: Vec<f64>,
    pub max_drift: f64,
}

/// Tracks `g(V, W)` along the flow line of `w` through `p`.
pub fn pairing_along_flow(
    m: &DiagonalMetric,
    v: &VectorField,
    w: &VectorField,
    p: Point,
    t: f64,
    n_steps: usize,
) -> Result<PairingReport> {
    check_args(t, n_steps)?;
    let pairing = |x: Point| -> Result<f64> {
        let a = v.coordinate_jets(m, x)?;
        let b = w.coordinate_jets(m, x)?;
        let [g1, g2] = m.components(x)?;
        Ok(g1 * a[0].value * b[0].value + g2 * a[1].value * b[1].value)
    };
    let h = t / n_steps as f64;
    let mut s = State { x: p, j: [[1.0, 0.0], [0.0, 1.0]] };
    let mut values = vec![pairing(p)?];
    for _ in 0..n_steps {
        s = rk4_step(m, w, &s, h)?;
        values.push(pairing(s.x)?);
    }
    let max_drift = values.iter().map(|x| (x - values[0]).abs()).fold(0.0, f64::max);
    Ok(PairingReport { values, max_drift })
}
