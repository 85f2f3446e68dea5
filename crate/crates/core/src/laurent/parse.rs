//! Text form: terms joined by `+`/`-`; a term is an optional integer
//! coefficient `*`-joined with factors `zI` or `zI^E` (`I >= 1`, `E` any
//! integer, negative exponents allowed).

use super::{Coefficient, ExponentVector, LaurentPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt;

/// Parses `text` as a polynomial in `k` variables.
pub fn parse_poly(text: &str, k: usize) -> Result<LaurentPoly> {
    let terms = Parser::new(text).parse()?;
    build(terms, k)
}

/// Parses `text`, taking `k` to be the largest variable index that occurs.
pub(crate) fn parse_poly_infer(text: &str) -> Result<LaurentPoly> {
    let terms = Parser::new(text).parse()?;
    let k = terms
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.var))
        .max()
        .unwrap_or(0);
    build(terms, k)
}

struct RawFactor {
    var: usize,
    exp: i64,
    pos: usize,
}

struct RawTerm {
    coeff: BigInt,
    factors: Vec<RawFactor>,
}

fn build(terms: Vec<RawTerm>, k: usize) -> Result<LaurentPoly> {
    let mut poly = LaurentPoly::zero(k);
    for t in terms {
        let mut e = vec![0i64; k];
        for f in &t.factors {
            if f.var > k {
                return Err(Error::VariableOutOfRange { index: f.var, k });
            }
            e[f.var - 1] = e[f.var - 1].checked_add(f.exp).ok_or(Error::Syntax {
                pos: f.pos,
                msg: "exponent overflow".into(),
            })?;
        }
        poly.add_term(ExponentVector(e), Coefficient::Int(t.coeff));
    }
    Ok(poly)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            s: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.peek() {
                None => break,
                Some(b'+') => {
                    negative = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut t = RawTerm {
            coeff: BigInt::one(),
            factors: Vec::new(),
        };
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.digits()?;
                    t.coeff *= n;
                }
                Some(b'z') | Some(b'Z') => {
                    let pos = self.pos;
                    self.pos += 1;
                    if !self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return self.err("expected a variable index after 'z'");
                    }
                    let idx = self.digits()?;
                    let var: usize = usize::try_from(&idx).ok().filter(|&v| v >= 1).ok_or(Error::Syntax {
                        pos,
                        msg: "variable index must be at least 1".into(),
                    })?;
                    let mut exp = 1i64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let mut neg = false;
                        match self.peek() {
                            Some(b'-') => {
                                neg = true;
                                self.pos += 1;
                            }
                            Some(b'+') => self.pos += 1,
                            _ => {}
                        }
                        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            return self.err("expected an integer exponent after '^'");
                        }
                        let e = self.digits()?;
                        exp = i64::try_from(&e).map_err(|_| Error::Syntax {
                            pos: self.pos,
                            msg: "exponent out of range".into(),
                        })?;
                        if neg {
                            exp = -exp;
                        }
                    }
                    t.factors.push(RawFactor { var, exp, pos });
                }
                Some(c) => return self.err(format!("expected a coefficient or variable, found '{}'", c as char)),
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }
}

fn format_monomial(e: &ExponentVector, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &x) in e.as_slice().iter().enumerate() {
        if x == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if x == 1 {
            write!(f, "z{}", i + 1)?;
        } else {
            write!(f, "z{}^{}", i + 1, x)?;
        }
    }
    Ok(())
}

pub(super) fn format_poly(p: &LaurentPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (idx, (e, c)) in p.terms().enumerate() {
        let origin = e.is_origin();
        match c {
            Coefficient::Int(n) => {
                let neg = n.is_negative();
                let mag = n.abs();
                match (idx, neg) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                if origin {
                    write!(f, "{mag}")?;
                } else {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    format_monomial(e, f)?;
                }
            }
            Coefficient::Complex(z) => {
                if idx > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({}{:+}i)", z.re, z.im)?;
                if !origin {
                    write!(f, "*")?;
                    format_monomial(e, f)?;
                }
            }
        }
    }
    Ok(())
}
