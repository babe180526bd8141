//! Parser for the polynomial grammar.
//!
//! ```text
//! poly     := sign? term (('+'|'-') term)*
//! term     := coeff ('*' varpow)* | varpow ('*' varpow)*
//! coeff    := rational | rational 'i' | 'i'
//! rational := int ('/' posint)?
//! varpow   := 'x' index ('^' posint)?
//! ```
//!
//! Whitespace around operators is ignored. Exponents are accepted and
//! collapsed on the spot (`x0^2` parses to `x0`), which is exactly reduction
//! modulo the field equations. Errors carry a byte position.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::ring::{Monomial, MultilinearPoly};
use crate::scalar::{GaussianRational, Rational};

/// Parses `text` into a canonical polynomial over `x0..x_{ambient-1}`.
pub fn parse_poly(text: &str, ambient: usize) -> Result<MultilinearPoly, Error> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        ambient,
    }
    .parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ambient: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<MultilinearPoly, Error> {
        let mut terms: Vec<(Monomial, GaussianRational)> = Vec::new();
        self.skip_ws();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { -&c } else { c }));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(other) => {
                    return Err(self.error(format!("expected '+' or '-', found {:?}", other as char)))
                }
            }
        }
        Ok(MultilinearPoly::from_terms(self.ambient, terms))
    }

    fn term(&mut self) -> Result<(Monomial, GaussianRational), Error> {
        self.skip_ws();
        let coeff;
        let mut monomial = Monomial::ONE;
        match self.peek() {
            Some(b'0'..=b'9') => {
                let r = self.rational()?;
                if self.peek() == Some(b'i') {
                    self.pos += 1;
                    coeff = GaussianRational::new(Rational::zero(), r);
                } else {
                    coeff = GaussianRational::from_real(r);
                }
            }
            Some(b'i') => {
                self.pos += 1;
                coeff = GaussianRational::i();
            }
            Some(b'x') => {
                coeff = GaussianRational::one();
                monomial = monomial.product(self.varpow()?);
            }
            Some(other) => {
                return Err(self.error(format!(
                    "expected a coefficient or variable, found {:?}",
                    other as char
                )))
            }
            None => return Err(self.error("expected a term".to_string())),
        }
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                break;
            }
            self.pos += 1;
            self.skip_ws();
            if self.peek() != Some(b'x') {
                return Err(self.error("expected a variable after '*'".to_string()));
            }
            monomial = monomial.product(self.varpow()?);
        }
        Ok((monomial, coeff))
    }

    /// `x` followed by an index, with an optional positive exponent that is
    /// discarded after validation (square-free reduction).
    fn varpow(&mut self) -> Result<Monomial, Error> {
        debug_assert_eq!(self.peek(), Some(b'x'));
        self.pos += 1;
        let index_pos = self.pos;
        let digits = self.digits()?;
        let index: usize = digits
            .parse()
            .map_err(|_| self.error_at(index_pos, "variable index too large".to_string()))?;
        if index >= self.ambient {
            return Err(self.error_at(
                index_pos,
                format!("variable x{index} out of range (vars: {})", self.ambient),
            ));
        }
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp_pos = self.pos;
            let exp = self.digits()?;
            if exp.bytes().all(|b| b == b'0') {
                return Err(self.error_at(exp_pos, "exponent must be positive".to_string()));
            }
        }
        Ok(Monomial::from_var(index))
    }

    fn rational(&mut self) -> Result<Rational, Error> {
        let numer: BigInt = self.digits()?.parse().expect("digits parse as BigInt");
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let denom_pos = self.pos;
            let denom: BigInt = self.digits()?.parse().expect("digits parse as BigInt");
            if denom.is_zero() {
                return Err(self.error_at(denom_pos, "zero denominator".to_string()));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn digits(&mut self) -> Result<String, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits".to_string()));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .to_string())
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: String) -> Error {
        self.error_at(self.pos, msg)
    }

    fn error_at(&self, pos: usize, msg: String) -> Error {
        Error::Parse { pos, msg }
    }
}
