//! Recursive-descent parser for rational functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | '+' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'x' | 'y' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::ratfun::RationalFunction2;
use super::rational::Rational;
use crate::error::{Error, Result};

pub fn parse_rational_function(src: &str) -> Result<RationalFunction2> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<RationalFunction2> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction2> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| Error::Parse {
                    offset: at,
                    message: "division by zero".to_string(),
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction2> {
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

    fn power(&mut self) -> Result<RationalFunction2> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let e: u32 = u32::try_from(&n)
                .ok()
                .filter(|&e| e <= 64)
                .ok_or_else(|| self.error("exponent must be an integer in 0..=64"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RationalFunction2> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RationalFunction2::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(RationalFunction2::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction2::constant(Rational::from_integer(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
