//! Scalar expressions in the variables x, y, t.
//!
//! Problem coefficients, sources, initial/boundary data and exact solutions
//! arrive as strings in config files; this module parses them into a small
//! AST and evaluates them as IEEE doubles. The grammar is the usual one:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | primary ('^' factor)?
//! primary := number | ident | ident '(' args ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` while `2^-3` is `2^(-3)`. The function set is fixed: sin,
//! cos, exp, log, sqrt, abs, tgamma (one argument) and pow (two arguments),
//! plus the constant `pi`. Arity is checked at parse time.

use crate::error::{Error, Result};
use crate::special::gamma_fn;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
    Pow,
    Tgamma,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Pow => "pow",
            Func::Tgamma => "tgamma",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Pow => 2,
            _ => 1,
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "pow" => Func::Pow,
            "tgamma" => Func::Tgamma,
            _ => return None,
        })
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Pi,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl Expr {
    /// Evaluates at the point (x, y, t). Non-finite intermediate or final
    /// values are reported as evaluation errors rather than propagated.
    pub fn eval(&self, x: f64, y: f64, t: f64) -> Result<f64> {
        let v = self.eval_raw(x, y, t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Eval(format!(
                "expression `{self}` evaluated to {v} at (x={x}, y={y}, t={t})"
            )))
        }
    }

    fn eval_raw(&self, x: f64, y: f64, t: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var(Var::X) => x,
            Expr::Var(Var::Y) => y,
            Expr::Var(Var::T) => t,
            Expr::Pi => std::f64::consts::PI,
            Expr::Neg(e) => -e.eval_raw(x, y, t),
            Expr::Bin(op, l, r) => {
                let l = l.eval_raw(x, y, t);
                let r = r.eval_raw(x, y, t);
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l / r,
                    BinOp::Pow => l.powf(r),
                }
            }
            Expr::Call(f, args) => {
                let a = args[0].eval_raw(x, y, t);
                match f {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Exp => a.exp(),
                    Func::Log => a.ln(),
                    Func::Sqrt => a.sqrt(),
                    Func::Abs => a.abs(),
                    Func::Pow => a.powf(args[1].eval_raw(x, y, t)),
                    Func::Tgamma => gamma_fn(a).unwrap_or(f64::NAN),
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(v) if *v < 0.0 => 3,
            Expr::Bin(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(Var::X) => write!(f, "x"),
            Expr::Var(Var::Y) => write!(f, "y"),
            Expr::Var(Var::T) => write!(f, "t"),
            Expr::Pi => write!(f, "pi"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.fmt_prec(f, 3)
            }
            Expr::Bin(op, l, r) => {
                let (sym, lmin, rmin) = match op {
                    BinOp::Add => ("+", 1, 2),
                    BinOp::Sub => ("-", 1, 2),
                    BinOp::Mul => ("*", 2, 3),
                    BinOp::Div => ("/", 2, 3),
                    // base must be a primary, exponent may be any factor
                    BinOp::Pow => ("^", 5, 3),
                };
                l.fmt_prec(f, lmin)?;
                write!(f, " {sym} ")?;
                r.fmt_prec(f, rmin)
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.fmt_prec(f, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Parses `source` into an [`Expr`]. Errors carry the byte offset of the
/// offending token.
pub fn parse(source: &str) -> Result<Expr> {
    let mut p = Parser {
        src: source.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty expression".to_string(),
        });
    }
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Syntax {
            offset: p.pos,
            message: format!("unexpected trailing input `{}`", p.rest()),
        });
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &str {
        std::str::from_utf8(&self.src[self.pos..]).unwrap_or("")
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(Error::Syntax {
                offset: self.pos,
                message: format!("expected `{}`", byte as char),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut node = self.term()?;
        loop {
            if self.eat(b'+') {
                node = Expr::Bin(BinOp::Add, Box::new(node), Box::new(self.term()?));
            } else if self.eat(b'-') {
                node = Expr::Bin(BinOp::Sub, Box::new(node), Box::new(self.term()?));
            } else {
                return Ok(node);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut node = self.factor()?;
        loop {
            if self.eat(b'*') {
                node = Expr::Bin(BinOp::Mul, Box::new(node), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                node = Expr::Bin(BinOp::Div, Box::new(node), Box::new(self.factor()?));
            } else {
                return Ok(node);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.primary()?;
        if self.eat(b'^') {
            let exponent = self.factor()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(c) => Err(Error::Syntax {
                offset: self.pos,
                message: format!("unexpected character `{}`", c as char),
            }),
            None => Err(Error::Syntax {
                offset: self.pos,
                message: "unexpected end of input".to_string(),
            }),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || *c == b'.')
        {
            self.pos += 1;
        }
        // optional exponent part
        if self
            .src
            .get(self.pos)
            .is_some_and(|c| *c == b'e' || *c == b'E')
        {
            let mark = self.pos;
            self.pos += 1;
            if self
                .src
                .get(self.pos)
                .is_some_and(|c| *c == b'+' || *c == b'-')
            {
                self.pos += 1;
            }
            if self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark; // `e` was an identifier start, not an exponent
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| Error::Syntax {
                offset: start,
                message: format!("malformed number `{text}`"),
            })
    }

    fn ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if self.peek() == Some(b'(') {
            let func = Func::lookup(name).ok_or_else(|| Error::UnknownIdentifier {
                offset: start,
                name: name.to_string(),
            })?;
            self.pos += 1; // consume '('
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            self.expect(b')')?;
            if args.len() != func.arity() {
                return Err(Error::Arity {
                    offset: start,
                    name: name.to_string(),
                    expected: func.arity(),
                    found: args.len(),
                });
            }
            return Ok(Expr::Call(func, args));
        }
        match name {
            "x" => Ok(Expr::Var(Var::X)),
            "y" => Ok(Expr::Var(Var::Y)),
            "t" => Ok(Expr::Var(Var::T)),
            "pi" => Ok(Expr::Pi),
            _ => Err(Error::UnknownIdentifier {
                offset: start,
                name: name.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn eval(src: &str, x: f64, y: f64, t: f64) -> f64 {
        parse(src).unwrap().eval(x, y, t).unwrap()
    }

    #[test]
    fn precedence_and_arithmetic() {
        assert_eq!(eval("2+3*4", 0.0, 0.0, 0.0), 14.0);
        assert_eq!(eval("x^2*(1-x)^2", 0.5, 0.0, 0.0), 0.0625);
        assert!((eval("tgamma(3)", 0.0, 0.0, 0.0) - 2.0).abs() < 1e-13);
        assert_eq!(eval("t", 0.0, 0.0, 0.25), 0.25);
        assert_eq!(eval("2*pi", 0.0, 0.0, 0.0), 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn unary_minus_binds_looser_than_pow() {
        assert_eq!(eval("-x^2", 2.0, 0.0, 0.0), -4.0);
        assert_eq!(eval("(-x)^2", 2.0, 0.0, 0.0), 4.0);
        assert_eq!(eval("2^-3", 0.0, 0.0, 0.0), 0.125);
    }

    #[test]
    fn pow_is_right_associative() {
        assert_eq!(eval("2^3^2", 0.0, 0.0, 0.0), 512.0);
    }

    #[test]
    fn two_argument_pow() {
        let got = eval("pow(0.5, 2.9)", 0.0, 0.0, 0.0);
        assert!((got - 0.5f64.powf(2.9)).abs() < 1e-15);
        assert!((got - 0.133_971_682_817_036_64).abs() < 1e-12);
    }

    #[test]
    fn arity_is_checked_at_parse_time() {
        match parse("pow(2)") {
            Err(Error::Arity {
                expected: 2,
                found: 1,
                ..
            }) => {}
            other => panic!("expected arity error, got {other:?}"),
        }
        match parse("sin(1, 2)") {
            Err(Error::Arity {
                expected: 1,
                found: 2,
                ..
            }) => {}
            other => panic!("expected arity error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse("x^") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("x + foo") {
            Err(Error::UnknownIdentifier { offset, name }) => {
                assert_eq!(offset, 4);
                assert_eq!(name, "foo");
            }
            other => panic!("expected unknown-identifier error, got {other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("1 + ").is_err());
        assert!(parse("(1").is_err());
    }

    #[test]
    fn nonfinite_results_are_errors() {
        assert!(parse("log(0 - 1)").unwrap().eval(0.0, 0.0, 0.0).is_err());
        assert!(parse("1/0").unwrap().eval(0.0, 0.0, 0.0).is_err());
        // negative base, non-integer exponent
        assert!(parse("(0-2)^0.5").unwrap().eval(0.0, 0.0, 0.0).is_err());
    }

    fn random_expr(rng: &mut StdRng, depth: usize) -> Expr {
        if depth == 0 || rng.gen_range(0..10) < 3 {
            return match rng.gen_range(0..5) {
                0 => Expr::Num(f64::from(rng.gen_range(0..100)) / 8.0),
                1 => Expr::Var(Var::X),
                2 => Expr::Var(Var::Y),
                3 => Expr::Var(Var::T),
                _ => Expr::Pi,
            };
        }
        match rng.gen_range(0..8) {
            0 => Expr::Neg(Box::new(random_expr(rng, depth - 1))),
            1 => Expr::Call(Func::Sin, vec![random_expr(rng, depth - 1)]),
            2 => Expr::Call(Func::Cos, vec![random_expr(rng, depth - 1)]),
            3 => Expr::Call(Func::Abs, vec![random_expr(rng, depth - 1)]),
            4 => Expr::Call(
                Func::Pow,
                vec![random_expr(rng, depth - 1), random_expr(rng, depth - 1)],
            ),
            _ => {
                let op = match rng.gen_range(0..5) {
                    0 => BinOp::Add,
                    1 => BinOp::Sub,
                    2 => BinOp::Mul,
                    3 => BinOp::Div,
                    _ => BinOp::Pow,
                };
                Expr::Bin(
                    op,
                    Box::new(random_expr(rng, depth - 1)),
                    Box::new(random_expr(rng, depth - 1)),
                )
            }
        }
    }

    #[test]
    fn print_parse_round_trip_fuzz() {
        let mut rng = StdRng::seed_from_u64(0xf00d);
        for case in 0..1000 {
            let tree = random_expr(&mut rng, 5);
            let text = tree.to_string();
            let reparsed =
                parse(&text).unwrap_or_else(|e| panic!("case {case}: `{text}` failed: {e}"));
            assert_eq!(reparsed, tree, "case {case}: `{text}` reparsed differently");
            let (x, y, t) = (
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.0..1.0),
            );
            let a = tree.eval_raw(x, y, t);
            let b = reparsed.eval_raw(x, y, t);
            assert!(
                a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()),
                "case {case}: `{text}` evaluated to different bits"
            );
            // evaluation is pure
            assert_eq!(
                tree.eval_raw(x, y, t).to_bits(),
                a.to_bits(),
                "case {case}: re-evaluation changed bits"
            );
        }
    }
}
