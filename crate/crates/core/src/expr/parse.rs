//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'
//! ```

use thiserror::Error;

use super::{BinOp, Expr, Func, Var};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at offset {offset}: {kind}")]
pub struct ParseError {
    /// Byte offset into the source text.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("expected operand")]
    ExpectedOperand,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent only when digits follow, so `2e` is not swallowed
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let s = &text[start..i];
            let v: f64 = s.parse().map_err(|_| ParseError {
                offset: start,
                kind: ParseErrorKind::BadNumber(s.to_string()),
            })?;
            out.push((Tok::Num(v), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if b"+-*/^()".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(ParseError {
                offset: i,
                kind: ParseErrorKind::UnexpectedChar(ch),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            kind,
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let exponent = self.unary()?;
            Ok(Expr::binary(BinOp::Pow, base, exponent))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Lit(v))
            }
            Tok::Ident(name) => {
                let at = self.offset();
                self.bump();
                if *self.peek() == Tok::Sym('(') {
                    let Some(f) = Func::from_name(&name) else {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::UnknownFunction(name),
                        });
                    };
                    self.bump();
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return self.err(ParseErrorKind::Expected("')'"));
                    }
                    return Ok(Expr::call(f, arg));
                }
                match name.as_str() {
                    "x1" => Ok(Expr::Var(Var::X1)),
                    "x2" => Ok(Expr::Var(Var::X2)),
                    _ if Func::from_name(&name).is_some() => {
                        self.err(ParseErrorKind::Expected("'(' after function name"))
                    }
                    _ => Err(ParseError {
                        offset: at,
                        kind: ParseErrorKind::UnknownIdentifier(name),
                    }),
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err(ParseErrorKind::Expected("')'"));
                }
                Ok(inner)
            }
            _ => self.err(ParseErrorKind::ExpectedOperand),
        }
    }
}

/// Parses an expression in `x1`, `x2`.
///
/// `^` binds tighter than unary minus, which binds tighter than `*` and `/`.
/// `^` is right-associative; the other binary operators associate left.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::Sym(')') => p.err(ParseErrorKind::UnexpectedChar(')')),
        _ => p.err(ParseErrorKind::Expected("operator or end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> Expr {
        Expr::Var(x)
    }

    #[test]
    fn product_of_call_and_var() {
        let e = parse("exp(x1)*x2").unwrap();
        assert_eq!(
            e,
            Expr::binary(BinOp::Mul, Expr::call(Func::Exp, v(Var::X1)), v(Var::X2))
        );
    }

    #[test]
    fn reciprocal_cosh() {
        let e = parse("1/cosh(x2)").unwrap();
        assert_eq!(
            e,
            Expr::binary(BinOp::Div, Expr::Lit(1.0), Expr::call(Func::Cosh, v(Var::X2)))
        );
    }

    #[test]
    fn incomplete_input_reports_offset() {
        let err = parse("x1 + ").unwrap_err();
        assert_eq!(err.offset, 5);
        assert_eq!(err.kind, ParseErrorKind::ExpectedOperand);
        assert!(err.to_string().contains("expected operand"));
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::ExpectedOperand);
        assert_eq!(parse("   ").unwrap_err().offset, 3);
    }

    #[test]
    fn unknown_names() {
        let err = parse("2*y").unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("y".into()));
        let err = parse("x1+erf(x2)").unwrap_err();
        assert_eq!(err.offset, 3);
        assert_eq!(err.kind, ParseErrorKind::UnknownFunction("erf".into()));
        assert!(matches!(
            parse("exp + 1").unwrap_err().kind,
            ParseErrorKind::Expected(_)
        ));
    }

    #[test]
    fn precedence_and_associativity() {
        let pow = |a, b| Expr::binary(BinOp::Pow, a, b);
        // -x1^2 = -(x1^2)
        assert_eq!(
            parse("-x1^2").unwrap(),
            Expr::Neg(Box::new(pow(v(Var::X1), Expr::Lit(2.0))))
        );
        // right-assoc power
        assert_eq!(
            parse("x1^x2^2").unwrap(),
            pow(v(Var::X1), pow(v(Var::X2), Expr::Lit(2.0)))
        );
        // left-assoc subtraction and division
        assert_eq!(
            parse("x1-x2-1").unwrap(),
            Expr::binary(
                BinOp::Sub,
                Expr::binary(BinOp::Sub, v(Var::X1), v(Var::X2)),
                Expr::Lit(1.0)
            )
        );
        assert_eq!(
            parse("x1/x2*3").unwrap(),
            Expr::binary(
                BinOp::Mul,
                Expr::binary(BinOp::Div, v(Var::X1), v(Var::X2)),
                Expr::Lit(3.0)
            )
        );
        // unary minus binds tighter than *
        assert_eq!(
            parse("-x1*x2").unwrap(),
            Expr::binary(BinOp::Mul, Expr::Neg(Box::new(v(Var::X1))), v(Var::X2))
        );
    }

    #[test]
    fn whitespace_and_numbers() {
        assert_eq!(parse(" 2.5 *\tx1 ").unwrap(), parse("2.5*x1").unwrap());
        assert_eq!(parse("1e-3").unwrap(), Expr::Lit(1e-3));
        assert_eq!(parse(".5").unwrap(), Expr::Lit(0.5));
        assert!(matches!(
            parse("1.2.3").unwrap_err().kind,
            ParseErrorKind::BadNumber(_)
        ));
        assert!(matches!(
            parse("x1 $ 2").unwrap_err().kind,
            ParseErrorKind::UnexpectedChar('$')
        ));
    }

    #[test]
    fn unbalanced_parens() {
        assert_eq!(parse("(x1+1").unwrap_err().offset, 5);
        assert_eq!(
            parse("x1)").unwrap_err().kind,
            ParseErrorKind::UnexpectedChar(')')
        );
        assert_eq!(parse("x1 x2").unwrap_err().offset, 3);
    }
}
