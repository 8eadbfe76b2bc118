use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{BinOp, Expr, Func, Jet2, Point, Var};
use crate::error::EvalError;
use crate::families::Antiderivative;

/// Scalar types an expression can be evaluated into.
///
/// `f64` gives plain values; [`Jet2`] additionally carries exact first and
/// second partial derivatives.
pub trait Number:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    fn variable(var: Var, p: Point) -> Self;
    fn value(&self) -> f64;
    /// True when all carried derivatives vanish.
    fn is_const(&self) -> bool;
    fn finite(&self) -> bool;
    fn apply(self, f: Func) -> Self;
    fn powi_mul(self, n: i32) -> Self;
    fn powi_chain(self, n: i32) -> Self;
    fn powf(self, c: f64) -> Self;
    fn antiderivative(a: &Antiderivative, p: Point) -> Result<Self, EvalError>;
}

fn apply_f64(f: Func, x: f64) -> f64 {
    match f {
        Func::Exp => x.exp(),
        Func::Ln => x.ln(),
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Tan => x.tan(),
        Func::Sinh => x.sinh(),
        Func::Cosh => x.cosh(),
        Func::Tanh => x.tanh(),
        Func::Sqrt => x.sqrt(),
        Func::Abs => x.abs(),
    }
}

impl Number for f64 {
    fn constant(v: f64) -> Self {
        v
    }
    fn variable(var: Var, p: Point) -> Self {
        p[var.index()]
    }
    fn value(&self) -> f64 {
        *self
    }
    fn is_const(&self) -> bool {
        true
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
    fn apply(self, f: Func) -> Self {
        apply_f64(f, self)
    }
    fn powi_mul(self, n: i32) -> Self {
        let mut acc = 1.0;
        for _ in 0..n.unsigned_abs() {
            acc *= self;
        }
        if n < 0 {
            1.0 / acc
        } else {
            acc
        }
    }
    fn powi_chain(self, n: i32) -> Self {
        self.powi(n)
    }
    fn powf(self, c: f64) -> Self {
        f64::powf(self, c)
    }
    fn antiderivative(a: &Antiderivative, p: Point) -> Result<Self, EvalError> {
        a.eval(p[a.var().index()])
    }
}

impl Number for Jet2 {
    fn constant(v: f64) -> Self {
        Jet2::constant(v)
    }
    fn variable(var: Var, p: Point) -> Self {
        Jet2::variable(var.index(), p[var.index()])
    }
    fn value(&self) -> f64 {
        self.value
    }
    fn is_const(&self) -> bool {
        self.grad == [0.0; 2] && self.hess == [0.0; 3]
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
    fn apply(self, f: Func) -> Self {
        match f {
            Func::Exp => self.exp(),
            Func::Ln => self.ln(),
            Func::Sin => self.sin(),
            Func::Cos => self.cos(),
            Func::Tan => self.tan(),
            Func::Sinh => self.sinh(),
            Func::Cosh => self.cosh(),
            Func::Tanh => self.tanh(),
            Func::Sqrt => self.sqrt(),
            Func::Abs => self.abs(),
        }
    }
    fn powi_mul(self, n: i32) -> Self {
        Jet2::powi_mul(self, n)
    }
    fn powi_chain(self, n: i32) -> Self {
        Jet2::powi_chain(self, n)
    }
    fn powf(self, c: f64) -> Self {
        Jet2::powf(self, c)
    }
    fn antiderivative(a: &Antiderivative, p: Point) -> Result<Self, EvalError> {
        a.jet(p)
    }
}

/// Largest integer exponent expanded by repeated multiplication.
const MAX_MUL_POWER: f64 = 8.0;

struct Evaluator {
    point: Point,
}

impl Evaluator {
    fn domain<T>(&self, e: &Expr, reason: &str) -> Result<T, EvalError> {
        Err(EvalError::Domain {
            expr: e.to_string(),
            point: self.point,
            reason: reason.to_string(),
        })
    }

    fn eval<N: Number>(&self, e: &Expr) -> Result<N, EvalError> {
        let out = match e {
            Expr::Var(v) => N::variable(*v, self.point),
            Expr::Lit(c) => N::constant(*c),
            Expr::Neg(a) => -self.eval::<N>(a)?,
            Expr::Call(f, a) => {
                let x = self.eval::<N>(a)?;
                let xv = x.value();
                match f {
                    Func::Ln if xv <= 0.0 => return self.domain(e, "ln of non-positive value"),
                    Func::Sqrt if xv < 0.0 => return self.domain(e, "sqrt of negative value"),
                    Func::Sqrt if xv == 0.0 && !x.is_const() => {
                        return self.domain(e, "sqrt is not differentiable at 0")
                    }
                    Func::Abs if xv == 0.0 && !x.is_const() => {
                        return self.domain(e, "abs is not differentiable at 0")
                    }
                    _ => {}
                }
                if x.is_const() {
                    N::constant(apply_f64(*f, xv))
                } else {
                    x.apply(*f)
                }
            }
            Expr::Binary(op, l, r) => {
                let a = self.eval::<N>(l)?;
                match op {
                    BinOp::Add => a + self.eval::<N>(r)?,
                    BinOp::Sub => a - self.eval::<N>(r)?,
                    BinOp::Mul => a * self.eval::<N>(r)?,
                    BinOp::Div => {
                        let b = self.eval::<N>(r)?;
                        if b.value() == 0.0 {
                            return self.domain(e, "division by zero");
                        }
                        a / b
                    }
                    BinOp::Pow => self.power(e, a, r)?,
                }
            }
            Expr::Integral(a) => N::antiderivative(a, self.point)?,
        };
        if !out.finite() {
            return self.domain(e, "non-finite result");
        }
        Ok(out)
    }

    fn power<N: Number>(&self, e: &Expr, base: N, exponent: &Expr) -> Result<N, EvalError> {
        let bv = base.value();
        if exponent.is_constant() {
            let c: f64 = self.eval::<f64>(exponent)?;
            if c.fract() == 0.0 && c.abs() <= i32::MAX as f64 {
                let n = c as i32;
                if n < 0 && bv == 0.0 {
                    return self.domain(e, "division by zero");
                }
                return Ok(if c.abs() <= MAX_MUL_POWER {
                    base.powi_mul(n)
                } else {
                    base.powi_chain(n)
                });
            }
            if base.is_const() {
                if bv < 0.0 {
                    return self.domain(e, "non-integer power of negative base");
                }
                return Ok(N::constant(bv.powf(c)));
            }
            if bv <= 0.0 {
                return self.domain(e, "non-integer power of non-positive base");
            }
            return Ok(base.powf(c));
        }
        let x = self.eval::<N>(exponent)?;
        if bv <= 0.0 {
            return self.domain(e, "variable power of non-positive base");
        }
        Ok((x * base.apply(Func::Ln)).apply(Func::Exp))
    }
}

/// Evaluates `e` at `p` to a plain value.
pub fn eval(e: &Expr, p: Point) -> Result<f64, EvalError> {
    Evaluator { point: p }.eval::<f64>(e)
}

/// Evaluates `e` at `p` together with its gradient and Hessian.
pub fn eval_jet2(e: &Expr, p: Point) -> Result<Jet2, EvalError> {
    Evaluator { point: p }.eval::<Jet2>(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn jet(src: &str, p: Point) -> Jet2 {
        eval_jet2(&parse(src).unwrap(), p).unwrap()
    }

    #[test]
    fn bilinear() {
        let j = jet("x1*x2", [0.0, 2.0]);
        assert_eq!(j.value, 0.0);
        assert_eq!(j.grad, [2.0, 0.0]);
        assert_eq!(j.hess, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn constant_has_zero_derivatives() {
        let j = jet("1", [5.0, -3.0]);
        assert_eq!(j, Jet2::constant(1.0));
    }

    #[test]
    fn exp_times_var() {
        // exact: value 2, grad (2, 1), hess (2, 1, 0)
        let j = jet("exp(x1)*x2", [0.0, 2.0]);
        assert_eq!(j.value, 2.0);
        assert_eq!(j.grad, [2.0, 1.0]);
        assert_eq!(j.hess, [2.0, 1.0, 0.0]);
    }

    #[test]
    fn integer_power_at_zero_base() {
        let j = jet("x1^2", [0.0, 0.0]);
        assert_eq!(j.hess[0], 2.0);
        let j = jet("x1^3", [0.0, 0.0]);
        assert_eq!(j.hess[0], 0.0);
        let j = jet("x1^12", [1.0, 0.0]);
        assert_eq!(j.grad[0], 12.0);
        assert_eq!(j.hess[0], 132.0);
    }

    #[test]
    fn real_powers() {
        let j = jet("x1^0.5", [4.0, 0.0]);
        assert!((j.value - 2.0).abs() < 1e-15);
        assert!((j.grad[0] - 0.25).abs() < 1e-15);
        let j = jet("x1^x2", [2.0, 3.0]);
        assert!((j.value - 8.0).abs() < 1e-13);
        assert!((j.grad[1] - 8.0 * 2f64.ln()).abs() < 1e-12);
        assert!((jet("2^0.5", [0.0, 0.0]).value - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn domain_errors_name_subexpression() {
        let e = parse("1 + ln(x1 - 1)").unwrap();
        match eval_jet2(&e, [0.5, 0.0]).unwrap_err() {
            EvalError::Domain { expr, point, reason } => {
                assert_eq!(expr, "ln(x1-1)");
                assert_eq!(point, [0.5, 0.0]);
                assert!(reason.contains("non-positive"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(eval(&parse("1/x1").unwrap(), [0.0, 1.0]).is_err());
        assert!(eval_jet2(&parse("sqrt(x1)").unwrap(), [0.0, 1.0]).is_err());
        assert!(eval_jet2(&parse("abs(x2)").unwrap(), [0.0, 0.0]).is_err());
        assert!(eval_jet2(&parse("x1^-1").unwrap(), [0.0, 0.0]).is_err());
        assert!(eval_jet2(&parse("x1^0.5").unwrap(), [-1.0, 0.0]).is_err());
        assert!(eval_jet2(&parse("exp(exp(x1))").unwrap(), [10.0, 0.0]).is_err());
        // constant arguments do not need differentiability
        assert_eq!(eval_jet2(&parse("sqrt(0)+abs(0)").unwrap(), [1.0, 1.0]).unwrap().value, 0.0);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let e = parse("sin(x1*x2)/cosh(x1-x2)^3 + tanh(x2)").unwrap();
        let a = eval_jet2(&e, [0.3, -0.8]).unwrap();
        let b = eval_jet2(&e, [0.3, -0.8]).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.hess[1].to_bits(), b.hess[1].to_bits());
        assert!((eval(&e, [0.3, -0.8]).unwrap() - a.value).abs() < 1e-15);
    }
}
