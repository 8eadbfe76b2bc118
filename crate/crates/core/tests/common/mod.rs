//! Seeded corpus of smooth random expressions over `[-1, 1]^2`.
//!
//! Every generated expression is finite and differentiable on a
//! neighbourhood of the unit square: logarithms, roots, quotients and
//! non-integer powers only ever see arguments bounded away from zero.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6b69_6c6c;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn literal(rng: &mut ChaCha8Rng) -> String {
    // two decimals keep printed literals short
    let v: f64 = (rng.gen_range(-200..=200) as f64) / 100.0;
    if v < 0.0 {
        format!("({v})")
    } else {
        format!("{v}")
    }
}

fn leaf(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..5) {
        0 | 1 => "x1".into(),
        2 | 3 => "x2".into(),
        _ => literal(rng),
    }
}

/// Positive and bounded below by 0.5.
fn positive(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let e = expr(rng, depth);
    match rng.gen_range(0..3) {
        0 => format!("(1.5+sin({e}))"),
        1 => format!("(1.5+cos({e}))"),
        _ => format!("(cosh({e}))"),
    }
}

pub fn expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..16) {
        0 => format!("{}+{}", expr(rng, d), expr(rng, d)),
        1 => format!("{}-({})", expr(rng, d), expr(rng, d)),
        2 => format!("({})*({})", expr(rng, d), expr(rng, d)),
        3 => format!("({})/{}", expr(rng, d), positive(rng, d)),
        4 => format!("-({})", expr(rng, d)),
        5 => format!("sin({})", expr(rng, d)),
        6 => format!("cos({})", expr(rng, d)),
        7 => format!("exp(0.5*sin({}))", expr(rng, d)),
        8 => format!("tanh({})", expr(rng, d)),
        9 => format!("ln{}", positive(rng, d)),
        10 => format!("sqrt(1+({})^2)", expr(rng, d)),
        11 => format!("({})^{}", expr(rng, d), rng.gen_range(2..=3)),
        12 => format!("{}^0.5", positive(rng, d)),
        13 => format!("{}^({})", positive(rng, d), expr(rng, d)),
        14 => format!("tan(0.5*tanh({}))", expr(rng, d)),
        _ => format!("sinh(0.5*({}))", expr(rng, d)),
    }
}

/// A nowhere-vanishing metric function.
pub fn metric_fn(rng: &mut ChaCha8Rng, depth: u32) -> String {
    match rng.gen_range(0..3) {
        0 => format!("exp(0.5*sin({}))", expr(rng, depth)),
        _ => positive(rng, depth),
    }
}

pub fn point(rng: &mut ChaCha8Rng) -> [f64; 2] {
    [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)]
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}
