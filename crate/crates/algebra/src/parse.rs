//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: sums and differences of products, `^` with nonnegative integer
//! exponents, parentheses, integer literals, division by nonzero constants,
//! variable names and (optionally) the generator name of a number field.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeff::Coeff;
use crate::error::{AlgebraError, Result};
use crate::numfield::{NfElem, NumberField};
use crate::poly::{MultiPoly, Vars};
use crate::rational::Rat;

pub fn parse_poly(src: &str, vars: &Vars, field: Option<&Arc<NumberField>>) -> Result<MultiPoly> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, vars, field };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a Vars,
    field: Option<&'a Arc<NumberField>>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{} at offset {}", msg, self.pos))
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

    fn expr(&mut self) -> Result<MultiPoly> {
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let c = d
                        .constant_value()
                        .and_then(|c| c.inv())
                        .ok_or_else(|| self.err("division by a non-constant or zero"))?;
                    acc = acc.scale(&c);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
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
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(MultiPoly::constant(self.vars, Coeff::Rat(Rat::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if self.vars.iter().any(|v| v == name) {
                    return Ok(MultiPoly::var(self.vars, name));
                }
                if let Some(k) = self.field {
                    if k.gen_name() == name {
                        return Ok(MultiPoly::constant(self.vars, Coeff::from_nf(NfElem::generator(k))));
                    }
                }
                Err(AlgebraError::Parse(format!("unknown symbol {name}")))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    #[test]
    fn parses_generator_and_fractions() {
        let k = NumberField::cyclotomic12();
        let vs = vars(&["t"]);
        let p = parse_poly("zeta^9 * t^2 - 1/2", &vs, Some(&k)).unwrap();
        let sq = &p * &p;
        let q = parse_poly("-t^4 - zeta^9*t^2 + 1/4", &vs, Some(&k)).unwrap();
        assert_eq!(sq, q);
    }

    #[test]
    fn rejects_garbage() {
        let vs = vars(&["x"]);
        assert!(parse_poly("x + y", &vs, None).is_err());
        assert!(parse_poly("x / x", &vs, None).is_err());
        assert!(parse_poly("(x + 1", &vs, None).is_err());
    }
}
