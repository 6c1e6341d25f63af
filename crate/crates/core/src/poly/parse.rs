//! Recursive-descent parser for polynomial expressions: `+ - * ^`,
//! parentheses, integer and `a/b` rational literals, ring variables.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Ring, Scalar};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    chars: Vec<char>,
    pos: usize,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse { column, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let col = self.column();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(err(col, "expected a non-negative integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| err(col, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.peek().map(|_| self.column()).unwrap_or(self.column());
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(err(self.column(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let dcol = self.column();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(err(dcol, "malformed rational literal: expected a denominator"));
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(err(dcol, "malformed rational literal: zero denominator"));
                    }
                    return Ok(Polynomial::constant(self.ring, Scalar::new(num, den)));
                }
                Ok(Polynomial::constant(self.ring, Scalar::from_integer(num)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(err(col, format!("unknown variable '{name}'"))),
                }
            }
            Some(c) => Err(err(col, format!("unexpected character '{c}'"))),
            None => Err(err(col, "unexpected end of expression")),
        }
    }
}

pub(super) fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, chars: text.chars().collect(), pos: 0 };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.column(), format!("unexpected character '{c}'")));
    }
    Ok(out)
}
