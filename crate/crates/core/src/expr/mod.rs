//! Scalar expressions in the two plane coordinates `x1`, `x2`.
//!
//! Expressions are parsed from a small infix grammar, evaluated either to
//! plain values or to second-order jets, and differentiated symbolically.
//! The symbolic path exists as an oracle for the jet path.

mod eval;
mod jet;
mod parse;
mod symbolic;

use std::fmt;
use std::sync::Arc;

use crate::families::Antiderivative;

pub use eval::{eval, eval_jet2, Number};
pub use jet::Jet2;
pub use parse::{parse, ParseError, ParseErrorKind};
pub use symbolic::{add, div, func, mul, neg, pow, sub, symbolic_derivative};

/// A point of the plane, `[x1, x2]`.
pub type Point = [f64; 2];

/// Coordinate variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X1,
    X2,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X1 => 0,
            Var::X2 => 1,
        }
    }

    pub fn other(self) -> Var {
        match self {
            Var::X1 => Var::X2,
            Var::X2 => Var::X1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Elementary functions recognised by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Exp,
        Func::Ln,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Binary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => PREC_ADD,
            BinOp::Mul | BinOp::Div => PREC_MUL,
            BinOp::Pow => PREC_POW,
        }
    }
}

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

/// Expression tree.
///
/// `Integral` never comes out of the parser. It is produced by the family
/// constructors for antiderivatives without an elementary closed form and
/// prints in a bracketed notation that the parser rejects.
#[derive(Debug, Clone)]
pub enum Expr {
    Var(Var),
    Lit(f64),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
    Integral(Arc<Antiderivative>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Expr::Var(a), Expr::Var(b)) => a == b,
            (Expr::Lit(a), Expr::Lit(b)) => a.to_bits() == b.to_bits(),
            (Expr::Neg(a), Expr::Neg(b)) => a == b,
            (Expr::Binary(o1, l1, r1), Expr::Binary(o2, l2, r2)) => {
                o1 == o2 && l1 == l2 && r1 == r2
            }
            (Expr::Call(f1, a1), Expr::Call(f2, a2)) => f1 == f2 && a1 == a2,
            (Expr::Integral(a), Expr::Integral(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Expr {
    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn lit(value: f64) -> Expr {
        Expr::Lit(value)
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn as_lit(&self) -> Option<f64> {
        match self {
            Expr::Lit(v) => Some(*v),
            _ => None,
        }
    }

    /// True when the tree contains no coordinate variable.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Var(_) => false,
            Expr::Lit(_) => true,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
            Expr::Integral(_) => false,
        }
    }

    /// True when `v` occurs somewhere in the tree.
    pub fn mentions(&self, v: Var) -> bool {
        match self {
            Expr::Var(w) => *w == v,
            Expr::Lit(_) => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.mentions(v),
            Expr::Binary(_, l, r) => l.mentions(v) || r.mentions(v),
            Expr::Integral(a) => a.var() == v,
        }
    }

    /// True when the tree is free of `Integral` nodes and so round-trips
    /// through the string grammar.
    pub fn is_closed_form(&self) -> bool {
        match self {
            Expr::Var(_) | Expr::Lit(_) => true,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_closed_form(),
            Expr::Binary(_, l, r) => l.is_closed_form() && r.is_closed_form(),
            Expr::Integral(_) => false,
        }
    }

    /// Replaces every occurrence of `v` by `with`.
    pub fn substitute(&self, v: Var, with: &Expr) -> Expr {
        match self {
            Expr::Var(w) if *w == v => with.clone(),
            Expr::Var(_) | Expr::Lit(_) | Expr::Integral(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(v, with))),
            Expr::Call(f, a) => Expr::call(*f, a.substitute(v, with)),
            Expr::Binary(op, l, r) => Expr::binary(*op, l.substitute(v, with), r.substitute(v, with)),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Lit(_) | Expr::Integral(_) => 1,
            Expr::Neg(a) | Expr::Call(_, a) => 1 + a.size(),
            Expr::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Var(_) | Expr::Lit(_) | Expr::Call(..) | Expr::Integral(_) => PREC_ATOM,
            Expr::Neg(_) => PREC_NEG,
            Expr::Binary(op, ..) => op.precedence(),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, parens: bool) -> fmt::Result {
    // a negative literal operand reads back as a negation unless wrapped
    let neg_lit = matches!(child, Expr::Lit(v) if v.is_sign_negative() && *v != 0.0);
    if parens || neg_lit {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Lit(v) if v.is_sign_negative() && *v != 0.0 => write!(f, "-{}", -v),
            Expr::Lit(v) => write!(f, "{}", v.abs()),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, a.precedence() < PREC_NEG)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Binary(BinOp::Pow, l, r) => {
                // base must be a primary; exponent may be any unary form
                write_child(f, l, l.precedence() <= PREC_POW)?;
                f.write_str("^")?;
                write_child(f, r, r.precedence() < PREC_NEG)
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                write_child(f, l, l.precedence() < p)?;
                write!(f, "{}", op.symbol())?;
                write_child(f, r, r.precedence() <= p)
            }
            Expr::Integral(a) => write!(f, "{a}"),
        }
    }
}
