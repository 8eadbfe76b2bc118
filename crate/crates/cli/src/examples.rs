//! The bundled metric/field pairs. Seven are Killing; the printed field for
//! `f1 = exp(x2)`, `f2 = 1` is not, and is kept so that the failure stays
//! visible.

use serde::Serialize;

use killing_core::geometry::Region;
use killing_core::io::{FieldDoc, MetricDoc, ProblemDoc};
use killing_core::verify::{flow_isometry_check, grid_residual_check};
use killing_core::Result;

/// Start point for every flow check.
pub const FLOW_START: [f64; 2] = [0.2, -0.3];

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub json: &'static str,
}

macro_rules! fixture {
    ($name:literal, $desc:literal) => {
        Fixture {
            name: $name,
            description: $desc,
            json: include_str!(concat!("../fixtures/", $name, ".json")),
        }
    };
}

pub const FIXTURES: [Fixture; 8] = [
    fixture!("separable_exponential", "exp(x1) d1 + exp(x2) d2 on f1 = exp(x1), f2 = exp(x2)"),
    fixture!("x1_exponential", "exp(x1) d1 + d2 on f1 = exp(x1), f2 = 1"),
    fixture!("reciprocal_translation", "d2 on f1 = exp(-x1), f2 = exp(x1)"),
    fixture!("x2_translation", "d1 on f1 = exp(x2), f2 = 1"),
    fixture!("crossed_constants", "k1^2 x2 d1 - k2^2 x1 d2 on f1 = 2, f2 = 3"),
    fixture!("const_f2_x1", "x2 exp(x1) d1 + exp(-x1) d2 on f1 = exp(x1), f2 = 1"),
    fixture!("const_f2_x2_printed", "-exp(x2)/2 d1 + x1 d2 on f1 = exp(x2), f2 = 1, as printed"),
    fixture!("flat_rotation", "frame (-x2, x1) on the flat plane"),
];

#[derive(Debug, Serialize)]
pub struct ExampleResult {
    pub name: &'static str,
    pub description: &'static str,
    pub metric: MetricDoc,
    pub field: FieldDoc,
    pub grid_max_abs: f64,
    pub grid_argmax: [f64; 2],
    pub grid_pass: bool,
    pub flow_deviation: f64,
    pub flow_pass: bool,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub region: Region,
    pub grid: usize,
    pub tol: f64,
    pub flow_start: [f64; 2],
    pub t: f64,
    pub steps: usize,
    pub flow_tol: f64,
    pub examples: Vec<ExampleResult>,
    pub failures: Vec<&'static str>,
    pub pass: bool,
}

pub fn run(grid: usize, tol: f64, t: f64, steps: usize, flow_tol: f64) -> Result<Summary> {
    let region = Region::default();
    let mut examples = Vec::with_capacity(FIXTURES.len());
    for fx in &FIXTURES {
        let doc = ProblemDoc::from_json(fx.json)?;
        let (m, v) = (doc.metric()?, doc.field()?);
        let g = grid_residual_check(&m, &v, &region, grid, tol)?;
        let f = flow_isometry_check(&m, &v, FLOW_START, t, steps, flow_tol)?;
        examples.push(ExampleResult {
            name: fx.name,
            description: fx.description,
            metric: (&m).into(),
            field: (&v).into(),
            grid_max_abs: g.max_abs,
            grid_argmax: g.argmax,
            grid_pass: g.pass,
            flow_deviation: f.max_deviation,
            flow_pass: f.pass,
            pass: g.pass && f.pass,
        });
    }
    let failures: Vec<_> = examples.iter().filter(|e| !e.pass).map(|e| e.name).collect();
    Ok(Summary {
        region,
        grid,
        tol,
        flow_start: FLOW_START,
        t,
        steps,
        flow_tol,
        pass: failures.is_empty(),
        failures,
        examples,
    })
}
