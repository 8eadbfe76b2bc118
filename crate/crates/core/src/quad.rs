//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

// node and weight tables are quoted at full published precision
#![allow(clippy::excessive_precision)]

use crate::error::EvalError;

// Kronrod abscissae on [0, 1] (odd indices are the Gauss points).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Subinterval budget before the integrator gives up.
pub const MAX_INTERVALS: usize = 2000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn kronrod<F>(f: &mut F, lo: f64, hi: f64) -> Result<Segment, EvalError>
where
    F: FnMut(f64) -> Result<f64, EvalError>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx)? + f(center + dx)?;
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Ok(Segment {
        lo,
        hi,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    })
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Reversed limits give the negated integral. The integrand error type is
/// passed through unchanged.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64, EvalError>
where
    F: FnMut(f64) -> Result<f64, EvalError>,
{
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    let mut segments = vec![kronrod(&mut f, a, b)?];
    loop {
        let total_err: f64 = segments.iter().map(|s| s.error).sum();
        if total_err <= tol {
            return Ok(segments.iter().map(|s| s.value).sum());
        }
        let (worst_idx, worst) = segments
            .iter()
            .copied()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let mid = 0.5 * (worst.lo + worst.hi);
        if segments.len() >= MAX_INTERVALS || mid <= worst.lo || mid >= worst.hi {
            return Err(EvalError::Quadrature {
                lo: a,
                hi: b,
                intervals: segments.len(),
                worst_lo: worst.lo,
                worst_hi: worst.hi,
                estimate: total_err,
            });
        }
        segments[worst_idx] = kronrod(&mut f, worst.lo, mid)?;
        segments.push(kronrod(&mut f, mid, worst.hi)?);
    }
}
