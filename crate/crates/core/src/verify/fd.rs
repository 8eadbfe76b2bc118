use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{eval, Expr, Point};

/// Finite-difference derivatives with an error estimate per entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdEstimate {
    pub grad: [f64; 2],
    /// `[d11, d12, d22]`.
    pub hess: [f64; 3],
    pub grad_err: [f64; 2],
    pub hess_err: [f64; 3],
}

fn central(e: &Expr, p: Point, h: f64) -> Result<([f64; 2], [f64; 3])> {
    let f = |dx: f64, dy: f64| eval(e, [p[0] + dx, p[1] + dy]);
    let f0 = f(0.0, 0.0)?;
    let (xp, xm) = (f(h, 0.0)?, f(-h, 0.0)?);
    let (yp, ym) = (f(0.0, h)?, f(0.0, -h)?);
    let cross = f(h, h)? - f(h, -h)? - f(-h, h)? + f(-h, -h)?;
    let h2 = h * h;
    Ok((
        [(xp - xm) / (2.0 * h), (yp - ym) / (2.0 * h)],
        [(xp - 2.0 * f0 + xm) / h2, cross / (4.0 * h2), (yp - 2.0 * f0 + ym) / h2],
    ))
}

/// Central differences at steps `h` and `h/2` combined by one Richardson
/// step. The error estimate is the size of the Richardson correction.
pub fn fd_oracle(e: &Expr, p: Point, h: f64) -> Result<FdEstimate> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Input(format!("step must be positive, got {h}")));
    }
    let (g1, h1) = central(e, p, h)?;
    let (g2, h2) = central(e, p, 0.5 * h)?;
    let rich = |a: f64, b: f64| (4.0 * b - a) / 3.0;
    let mut out = FdEstimate { grad: [0.0; 2], hess: [0.0; 3], grad_err: [0.0; 2], hess_err: [0.0; 3] };
    for i in 0..2 {
        out.grad[i] = rich(g1[i], g2[i]);
        out.grad_err[i] = (out.grad[i] - g2[i]).abs();
    }
    for i in 0..3 {
        out.hess[i] = rich(h1[i], h2[i]);
        out.hess_err[i] = (out.hess[i] - h2[i]).abs();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn product_gradient() {
        let r = fd_oracle(&parse("exp(x1)*x2").unwrap(), [0.0, 2.0], 1e-3).unwrap();
        assert!((r.grad[0] - 2.0).abs() < 1e-9);
        assert!((r.grad[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_is_exact() {
        let r = fd_oracle(&parse("7").unwrap(), [0.3, -4.0], 1e-3).unwrap();
        assert_eq!(r.grad, [0.0; 2]);
        assert_eq!(r.hess, [0.0; 3]);
    }

    #[test]
    fn cubic_second_derivative() {
        let r = fd_oracle(&parse("x1^3").unwrap(), [1.0, 0.0], 1e-3).unwrap();
        assert!((r.hess[0] - 6.0).abs() < 1e-6);
    }

    #[test]
    fn bad_step() {
        assert!(fd_oracle(&parse("x1").unwrap(), [0.0; 2], 0.0).is_err());
    }
}
