//! Symbolic differentiation with constant folding.
//!
//! The builders below fold literal arithmetic and the identities with 0 and
//! 1; nothing else is simplified.

use super::{BinOp, Expr, Func, Var};

fn lit_result(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Expr::Lit(v))
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Expr::Lit(v) => Expr::Lit(if v == 0.0 { 0.0 } else { -v }),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    match (a.as_lit(), b.as_lit()) {
        (Some(x), Some(y)) => lit_result(x + y).unwrap_or_else(|| Expr::binary(BinOp::Add, a, b)),
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => Expr::binary(BinOp::Add, a, b),
    }
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    match (a.as_lit(), b.as_lit()) {
        (Some(x), Some(y)) => lit_result(x - y).unwrap_or_else(|| Expr::binary(BinOp::Sub, a, b)),
        (Some(0.0), _) => neg(b),
        (_, Some(0.0)) => a,
        _ => Expr::binary(BinOp::Sub, a, b),
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    match (a.as_lit(), b.as_lit()) {
        (Some(x), Some(y)) => lit_result(x * y).unwrap_or_else(|| Expr::binary(BinOp::Mul, a, b)),
        (Some(0.0), _) | (_, Some(0.0)) => Expr::Lit(0.0),
        (Some(1.0), _) => b,
        (_, Some(1.0)) => a,
        (Some(-1.0), _) => neg(b),
        (_, Some(-1.0)) => neg(a),
        _ => Expr::binary(BinOp::Mul, a, b),
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    match (a.as_lit(), b.as_lit()) {
        (Some(x), Some(y)) if y != 0.0 => {
            lit_result(x / y).unwrap_or_else(|| Expr::binary(BinOp::Div, a, b))
        }
        (Some(0.0), _) => Expr::Lit(0.0),
        (_, Some(1.0)) => a,
        _ => Expr::binary(BinOp::Div, a, b),
    }
}

pub fn pow(a: Expr, b: Expr) -> Expr {
    match (a.as_lit(), b.as_lit()) {
        (_, Some(0.0)) => Expr::Lit(1.0),
        (_, Some(1.0)) => a,
        (Some(x), Some(y)) if x > 0.0 || y.fract() == 0.0 => {
            lit_result(x.powf(y)).unwrap_or_else(|| Expr::binary(BinOp::Pow, a, b))
        }
        _ => Expr::binary(BinOp::Pow, a, b),
    }
}

pub fn func(f: Func, a: Expr) -> Expr {
    if let Some(x) = a.as_lit() {
        let defined = match f {
            Func::Ln => x > 0.0,
            Func::Sqrt => x >= 0.0,
            _ => true,
        };
        if defined {
            let v = match f {
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
            };
            if let Some(e) = lit_result(v) {
                return e;
            }
        }
    }
    Expr::call(f, a)
}

/// Exact derivative tree of `e` with respect to `var`.
pub fn symbolic_derivative(e: &Expr, var: Var) -> Expr {
    match e {
        Expr::Var(v) => Expr::Lit(if *v == var { 1.0 } else { 0.0 }),
        Expr::Lit(_) => Expr::Lit(0.0),
        Expr::Neg(a) => neg(symbolic_derivative(a, var)),
        Expr::Binary(op, l, r) => {
            let dl = symbolic_derivative(l, var);
            let dr = symbolic_derivative(r, var);
            let (l, r) = ((**l).clone(), (**r).clone());
            match op {
                BinOp::Add => add(dl, dr),
                BinOp::Sub => sub(dl, dr),
                BinOp::Mul => add(mul(dl, r.clone()), mul(l, dr)),
                // (l' r - l r') / r^2
                BinOp::Div => div(
                    sub(mul(dl, r.clone()), mul(l, dr)),
                    pow(r, Expr::Lit(2.0)),
                ),
                BinOp::Pow if r.is_constant() => {
                    // n * l^(n-1) * l'
                    let n_minus_1 = sub(r.clone(), Expr::Lit(1.0));
                    mul(mul(r, pow(l, n_minus_1)), dl)
                }
                BinOp::Pow => {
                    // l^r * (r' ln l + r l' / l)
                    let whole = Expr::binary(BinOp::Pow, l.clone(), r.clone());
                    mul(
                        whole,
                        add(
                            mul(dr, func(Func::Ln, l.clone())),
                            div(mul(r, dl), l),
                        ),
                    )
                }
            }
        }
        Expr::Call(f, a) => {
            let da = symbolic_derivative(a, var);
            let a = (**a).clone();
            let outer = match f {
                Func::Exp => func(Func::Exp, a),
                Func::Ln => div(Expr::Lit(1.0), a),
                Func::Sin => func(Func::Cos, a),
                Func::Cos => neg(func(Func::Sin, a)),
                Func::Tan => div(Expr::Lit(1.0), pow(func(Func::Cos, a), Expr::Lit(2.0))),
                Func::Sinh => func(Func::Cosh, a),
                Func::Cosh => func(Func::Sinh, a),
                Func::Tanh => div(Expr::Lit(1.0), pow(func(Func::Cosh, a), Expr::Lit(2.0))),
                Func::Sqrt => div(Expr::Lit(1.0), mul(Expr::Lit(2.0), func(Func::Sqrt, a))),
                Func::Abs => div(a.clone(), func(Func::Abs, a)),
            };
            mul(outer, da)
        }
        Expr::Integral(a) => {
            if a.var() == var {
                a.integrand_expr()
            } else {
                Expr::Lit(0.0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval, parse};

    fn d(src: &str, v: Var) -> Expr {
        symbolic_derivative(&parse(src).unwrap(), v)
    }

    #[test]
    fn power_rule_folds() {
        assert_eq!(d("x1^2", Var::X1).to_string(), "2*x1");
        assert_eq!(d("x1^3", Var::X1).to_string(), "3*x1^2");
    }

    #[test]
    fn independent_variable_is_zero() {
        assert_eq!(d("exp(x1)", Var::X2), Expr::Lit(0.0));
        assert_eq!(d("sin(x1)*cos(x1)+7", Var::X2), Expr::Lit(0.0));
    }

    #[test]
    fn sech_derivative_vanishes_at_origin() {
        let de = d("1/cosh(x2)", Var::X2);
        assert_eq!(eval(&de, [0.3, 0.0]).unwrap(), 0.0);
        // -sech * tanh elsewhere
        let x: f64 = 0.7;
        let expect = -x.tanh() / x.cosh();
        assert!((eval(&de, [0.0, x]).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn folding_rules() {
        assert_eq!(add(Expr::Lit(2.0), Expr::Lit(3.0)), Expr::Lit(5.0));
        assert_eq!(mul(Expr::Lit(0.0), parse("x1").unwrap()), Expr::Lit(0.0));
        assert_eq!(sub(Expr::Lit(0.0), parse("x1").unwrap()).to_string(), "-x1");
        assert_eq!(div(Expr::Lit(1.0), Expr::Lit(0.0)).to_string(), "1/0");
        assert_eq!(func(Func::Exp, Expr::Lit(0.0)), Expr::Lit(1.0));
        assert_eq!(func(Func::Ln, Expr::Lit(-1.0)).to_string(), "ln(-1)");
        assert_eq!(pow(parse("x2").unwrap(), Expr::Lit(1.0)).to_string(), "x2");
    }

    #[test]
    fn variable_exponent() {
        let de = d("x1^x2", Var::X2);
        let p = [2.0, 3.0];
        assert!((eval(&de, p).unwrap() - 8.0 * 2f64.ln()).abs() < 1e-13);
    }
}
