//! Canonical text format for polynomials and rational functions, plus a
//! parser for the same grammar. Formatting then parsing is the identity on
//! canonical forms, and the formatter output is deterministic: terms in
//! descending graded lex order, symbols in table order inside a monomial.

use crate::error::ExactError;
use crate::mpoly::MPoly;
use crate::ratfun::RatFun;
use crate::scalar::Rational;
use crate::symbol::Sym;
use num::bigint::BigInt;
use num::traits::{One, Signed};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// "p" for integers, "p/q" otherwise.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_monomial(m: &crate::monomial::Monomial) -> String {
    let mut parts = Vec::new();
    for (s, e) in m.support() {
        if e == 1 {
            parts.push(s.name().to_string());
        } else {
            parts.push(format!("{}^{}", s.name(), e));
        }
    }
    parts.join("*")
}

/// One term with coefficient magnitude |c| = p/q: [p*]mono[/q], with the
/// monomial omitted when trivial.
fn fmt_term_body(c_abs: &Rational, m: &crate::monomial::Monomial) -> String {
    let p = c_abs.numer();
    let q = c_abs.denom();
    if m.is_one() {
        return if q.is_one() {
            p.to_string()
        } else {
            format!("{p}/{q}")
        };
    }
    let mut out = String::new();
    if !p.is_one() {
        out.push_str(&p.to_string());
        out.push('*');
    }
    out.push_str(&fmt_monomial(m));
    if !q.is_one() {
        out.push('/');
        out.push_str(&q.to_string());
    }
    out
}

pub fn fmt_mpoly(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.iter_desc().enumerate() {
        let neg = c.is_negative();
        let body = fmt_term_body(&c.abs(), m);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

/// True when the polynomial prints as a single product of a positive
/// integer and symbol powers, safe to embed without parentheses.
fn is_plain_term(p: &MPoly) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (_, c) = p.leading().expect("one term");
    c.denom().is_one()
}

/// True for a monic single power of one symbol, e.g. x^2: safe as a bare
/// denominator.
fn is_single_power(p: &MPoly) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (m, c) = p.leading().expect("one term");
    c.is_one() && m.support().count() == 1
}

pub fn fmt_ratfun(f: &RatFun) -> String {
    let num = f.num();
    let den = f.den();
    if den.is_one() {
        return fmt_mpoly(num);
    }
    let num_str = if is_plain_term(num) {
        fmt_mpoly(num)
    } else {
        format!("({})", fmt_mpoly(num))
    };
    let den_str = if is_single_power(den) {
        fmt_mpoly(den)
    } else {
        format!("({})", fmt_mpoly(den))
    };
    format!("{num_str}/{den_str}")
}

/// Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | atom ('^' uint)?
///   atom   := uint | symbol | '(' expr ')'
pub fn parse_ratfun(input: &str) -> Result<RatFun, ParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parse text that must denote a polynomial (denominator 1 after
/// canonicalization).
pub fn parse_mpoly(input: &str) -> Result<MPoly, ParseError> {
    let f = parse_ratfun(input)?;
    match f.as_mpoly() {
        Some(p) => Ok(p.clone()),
        None => Err(ParseError {
            pos: input.len(),
            msg: "expected a polynomial, found a proper rational function".into(),
        }),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let f = self.factor()?;
                    acc = acc.try_div(&f).map_err(|e| match e {
                        ExactError::ZeroDenominator => self.err("division by zero"),
                        _ => self.err("division failed"),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFun, ParseError> {
        self.skip_ws();
        if self.eat(b'-') {
            let f = self.factor()?;
            return Ok(-&f);
        }
        let a = self.atom()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            return Ok(a.pow(e));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<RatFun, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
                let n: BigInt = s.parse().expect("digits parse as integer");
                Ok(RatFun::from_rat(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|b| b.is_ascii_alphanumeric())
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii name");
                match Sym::from_name(name) {
                    Some(s) => Ok(RatFun::var(s)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown symbol '{name}'")))
                    }
                }
            }
            _ => Err(self.err("expected a number, symbol, or '('")),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| self.err("integer out of range"))
    }
}

/// Convenience display wrapper for anything the crate formats canonically.
pub struct Canonical<'a, T>(pub &'a T);

impl fmt::Display for Canonical<'_, MPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_mpoly(self.0))
    }
}

impl fmt::Display for Canonical<'_, RatFun> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_ratfun(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn x() -> MPoly {
        MPoly::var(Sym::X)
    }
    fn y() -> MPoly {
        MPoly::var(Sym::Y)
    }
    fn s3() -> MPoly {
        MPoly::var(Sym::s_const(3))
    }

    #[test]
    fn poly_formatting() {
        let theta2 = &x().pow(3).scale(&rat(1, 3)) - &s3();
        assert_eq!(fmt_mpoly(&theta2), "x^3/3 - s3");
        let p = &(&x().pow(2) * &y()).scale(&rat_int(-2)) + &MPoly::constant(rat(1, 2));
        assert_eq!(fmt_mpoly(&p), "-2*x^2*y + 1/2");
        assert_eq!(fmt_mpoly(&MPoly::zero()), "0");
    }

    #[test]
    fn ratfun_formatting() {
        let f = RatFun::new(MPoly::from_int(-1), x().pow(2)).unwrap();
        assert_eq!(fmt_ratfun(&f), "-1/x^2");
        let g = RatFun::new(MPoly::from_int(-2), &x() * &y()).unwrap();
        assert_eq!(fmt_ratfun(&g), "-2/(x*y)");
        let h = RatFun::new(&x().pow(3).scale(&rat(1, 3)) - &s3(), &x() - &y()).unwrap();
        assert_eq!(fmt_ratfun(&h), "(x^3/3 - s3)/(x - y)");
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "0",
            "x^3/3 - s3",
            "-1/x^2",
            "-2/(x*y)",
            "(x^3/3 - s3)/(x - y)",
            "-2*x^2*y + 1/2",
            "(-6*x^4 - 36*x*s3)/(x^6 - 6*x^3*s3 + 9*s3^2)",
            "u0^2/2 + u2/6",
        ] {
            let f = parse_ratfun(s).unwrap();
            assert_eq!(fmt_ratfun(&f), s, "round trip failed for {s}");
        }
    }

    #[test]
    fn parse_normalizes() {
        // non-canonical spellings parse to the same value
        let a = parse_ratfun("(x^2 - y^2)/(x - y)").unwrap();
        let b = parse_ratfun("x + y").unwrap();
        assert_eq!(a, b);
        let c = parse_ratfun(" 1/2 * x ^ 2 ").unwrap();
        let d = parse_ratfun("x^2/2").unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_ratfun("").is_err());
        assert!(parse_ratfun("x +").is_err());
        assert!(parse_ratfun("bogus").is_err());
        assert!(parse_ratfun("x/(x - x)").is_err());
        assert!(parse_ratfun("x) + 1").is_err());
    }

    #[test]
    fn unary_minus_and_powers() {
        let a = parse_ratfun("-x^2").unwrap();
        assert_eq!(a, RatFun::from_mpoly(-&x().pow(2)));
        let b = parse_ratfun("(-x)^2").unwrap();
        assert_eq!(b, RatFun::from_mpoly(x().pow(2)));
    }
}
