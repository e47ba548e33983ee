//! Text syntax for polynomials: `3*x0^2*x1 - x2 + 1/2`.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := integer ['/' integer] | name ['^' integer]
//! ```
//! Whitespace is ignored everywhere. Names are `[A-Za-z_][A-Za-z0-9_]*` and
//! must belong to the ring.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            src: s.as_bytes(),
            pos: 0,
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

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }
}

impl<F: Scalar> Polynomial<F> {
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Self> {
        let mut lx = Lexer::new(s);
        let n = ring.nvars();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = match lx.peek() {
                None if first => return Err(lx.err("empty polynomial")),
                None => break,
                Some(b'+') => {
                    lx.pos += 1;
                    F::one()
                }
                Some(b'-') => {
                    lx.pos += 1;
                    -F::one()
                }
                Some(_) if first => F::one(),
                Some(c) => return Err(lx.err(format!("unexpected `{}`", c as char))),
            };
            first = false;
            let mut coeff = sign;
            let mut exps = vec![0u32; n];
            let mut factors = 0;
            loop {
                match lx.peek() {
                    Some(c) if c.is_ascii_digit() => {
                        let num = lx.integer()?;
                        let mut den = BigInt::one();
                        if lx.peek() == Some(b'/') {
                            lx.pos += 1;
                            den = lx.integer()?;
                        }
                        let at = lx.pos;
                        let c = F::from_ratio(&num, &den).ok_or(Error::Parse {
                            offset: at,
                            message: format!("denominator {den} vanishes in {}", F::field()),
                        })?;
                        coeff = coeff * c;
                    }
                    Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                        let at = lx.pos;
                        let name = lx.ident().unwrap();
                        let i = ring.var_index(name).ok_or(Error::Parse {
                            offset: at,
                            message: format!("unknown variable `{name}`"),
                        })?;
                        let mut e = 1u32;
                        if lx.peek() == Some(b'^') {
                            lx.pos += 1;
                            let v = lx.integer()?;
                            e = u32::try_from(v).map_err(|_| lx.err("exponent too large"))?;
                        }
                        exps[i] = exps[i].checked_add(e).ok_or(Error::ExponentOverflow)?;
                    }
                    _ => {
                        if factors == 0 {
                            return Err(lx.err("expected coefficient or variable"));
                        }
                        return Err(lx.err("expected factor after `*`"));
                    }
                }
                factors += 1;
                match lx.peek() {
                    Some(b'*') => {
                        lx.pos += 1;
                    }
                    Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {}
                    _ => break,
                }
            }
            terms.push((Monomial::new(exps)?, coeff));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}
