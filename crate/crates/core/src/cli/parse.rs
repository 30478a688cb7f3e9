//! Expression parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' exponent)?
//! base   := number | symbol | '(' expr ')'
//! symbol := name prime* | name '^(' int ')'
//! ```
//!
//! Primes and `^(k)` denote derivatives and are only valid on jet symbols.
//! Implicit multiplication is rejected.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{MPoly, RatFunc, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown symbol '{name}' at column {col}")]
    UnknownSymbol { col: usize, name: String },
    #[error("{0}")]
    Invalid(String),
}

/// Maps a bare name to its variable; jets are looked up at order zero.
pub type Resolver<'a> = dyn Fn(&str) -> Option<Var> + 'a;

/// Resolution by naming convention: `y`, `u`, `x<i>`, `k<i>`; everything else is an ansatz unknown.
pub fn default_resolver(name: &str) -> Option<Var> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match name {
        "y" => Some(Var::output(0)),
        "u" => Some(Var::input(0)),
        _ if name.starts_with('x') && digits(&name[1..]) => Some(Var::x(name[1..].parse().ok()?)),
        _ if name.starts_with('k') && digits(&name[1..]) => Some(Var::param(name)),
        _ => Some(Var::ansatz(name)),
    }
}

struct Parser<'a, 'r> {
    src: &'a [u8],
    pos: usize,
    resolve: &'r Resolver<'r>,
}

pub fn parse_expr(text: &str, resolve: &Resolver<'_>) -> Result<RatFunc, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, resolve };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

/// Parses `lhs = rhs` (as `lhs - rhs`) or a bare expression.
pub fn parse_equation(text: &str, resolve: &Resolver<'_>) -> Result<RatFunc, ParseError> {
    let parts: Vec<&str> = text.split('=').collect();
    match parts.as_slice() {
        [e] => parse_expr(e, resolve),
        [l, r] => {
            let lhs = parse_expr(l, resolve)?;
            let rhs = parse_expr(r, resolve).map_err(|e| shift_col(e, l.len() + 1))?;
            Ok(&lhs - &rhs)
        }
        _ => Err(ParseError::Invalid("more than one '=' in equation".into())),
    }
}

fn shift_col(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { col, msg } => ParseError::Syntax { col: col + by, msg },
        ParseError::UnknownSymbol { col, name } => ParseError::UnknownSymbol { col: col + by, name },
        other => other,
    }
}

impl Parser<'_, '_> {
    fn err(&self, msg: String) -> ParseError {
        ParseError::Syntax { col: self.pos + 1, msg }
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

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ParseError::Syntax { col: at + 1, msg: "division by zero".into() });
                    }
                    acc = &acc / &d;
                }
                c if c.is_ascii_alphanumeric() || c == b'(' => {
                    return Err(self.err("implicit multiplication is not allowed; use '*'".into()));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        self.skip_ws();
        let n = self.integer()?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'".into()));
            }
            self.pos += 1;
        }
        u32::try_from(&n).map_err(|_| self.err("exponent out of range".into()))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn base(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.symbol(),
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }

    fn symbol(&mut self) -> Result<RatFunc, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let var = (self.resolve)(name).ok_or_else(|| ParseError::UnknownSymbol {
            col: start + 1,
            name: name.to_string(),
        })?;
        let mut order = 0u32;
        while self.src.get(self.pos) == Some(&b'\'') {
            order += 1;
            self.pos += 1;
        }
        // `name^(k)` is a derivative for jet symbols.
        if order == 0
            && var.is_jet()
            && self.src.get(self.pos) == Some(&b'^')
            && self.src.get(self.pos + 1) == Some(&b'(')
        {
            self.pos += 2;
            let k = self.integer()?;
            self.skip_ws();
            if self.src.get(self.pos) != Some(&b')') {
                return Err(self.err("expected ')'".into()));
            }
            self.pos += 1;
            order = u32::try_from(&k).map_err(|_| self.err("derivative order out of range".into()))?;
        }
        if order > 0 && !var.is_jet() {
            return Err(ParseError::Syntax {
                col: start + 1,
                msg: format!("'{name}' cannot be differentiated"),
            });
        }
        let v = if var.is_jet() {
            match var.kind() {
                crate::arith::VarKind::Input => Var::input(var.index() + order),
                _ => Var::output(var.index() + order),
            }
        } else {
            var
        };
        Ok(RatFunc::from(MPoly::var(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatFunc {
        parse_expr(s, &default_resolver).unwrap()
    }

    #[test]
    fn jets_and_powers() {
        assert_eq!(p("y''"), p("y^(2)"));
        assert_eq!(p("y^2"), &p("y") * &p("y"));
        assert_ne!(p("y^(2)"), p("y^2"));
        assert_eq!(p("u'''"), RatFunc::var(Var::input(3)));
    }

    #[test]
    fn rationals_and_precedence() {
        assert_eq!(p("1/2*x1 + 3"), &p("x1").scale(&Rational::new(1.into(), 2.into())) + &p("3"));
        assert_eq!(p("-x1^2"), -p("x1*x1"));
        assert_eq!(p("2^3"), p("8"));
    }

    #[test]
    fn equation_sides() {
        let e = parse_equation("u*y'' = y^2*u^2 + y'*u'", &default_resolver).unwrap();
        assert_eq!(e, p("u*y'' - y^2*u^2 - y'*u'"));
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(
            parse_expr("x1 + * 2", &default_resolver),
            Err(ParseError::Syntax { col: 6, msg: "unexpected '*'".into() })
        );
        assert!(matches!(parse_expr("2 x1", &default_resolver), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("x1'", &default_resolver), Err(ParseError::Syntax { .. })));
        let none = |_: &str| None;
        assert!(matches!(parse_expr("q", &none), Err(ParseError::UnknownSymbol { col: 1, .. })));
    }
}
