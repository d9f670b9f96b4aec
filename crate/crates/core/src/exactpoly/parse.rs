//! Small recursive-descent parser for polynomial expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
//! `factor := '-' factor | atom ('^' int)?`, `atom := number | var | '(' expr ')'`.
//! Numbers may be written `p/q` when directly adjacent (`3/4*x`).

use std::sync::Arc;

use super::poly::{MPoly, Ring};
use crate::error::{Error, Result};
use crate::rational;

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.src.get(self.pos) == Some(&b'/') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(MPoly::constant(self.ring, rational::parse(text)?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .ring
                    .var_index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(MPoly::var(self.ring, i))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

pub(crate) fn parse_poly(ring: &Arc<Ring>, s: &str) -> Result<MPoly> {
    let mut p = Parser { ring, src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::MonomialOrder;
    use crate::rational::frac;

    #[test]
    fn parses_nested_expressions() {
        let r = Ring::new(&["x", "y"], MonomialOrder::Grevlex);
        let a = parse_poly(&r, "(x+y)^2 - 2*x*y").unwrap();
        assert_eq!(a, parse_poly(&r, "x^2 + y^2").unwrap());
        let b = parse_poly(&r, "-3/4*x").unwrap();
        assert_eq!(b.leading_coeff().unwrap(), &frac(-3, 4));
        assert!(parse_poly(&r, "x + q").is_err());
        assert!(parse_poly(&r, "x +").is_err());
        assert!(parse_poly(&r, "(x").is_err());
    }
}
