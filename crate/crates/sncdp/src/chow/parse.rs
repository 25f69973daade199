//! A small expression parser for ring classes.
//!
//! Grammar (whitespace is ignored everywhere; the empty string is `0`):
//!
//! ```text
//! class  :=  [sign] term (sign term)*
//! sign   :=  '+' | '-'
//! term   :=  coeff ('*' varpow)*  |  varpow ('*' varpow)*
//! coeff  :=  digits ['/' digits]
//! varpow :=  ident ['^' digits]
//! ident  :=  letter (letter | digit | '_')*
//! ```
//!
//! Printing a class with `Display` always yields a string this parser maps
//! back to the same class.

use num_bigint::BigInt;

use crate::bigrat::Rat;
use crate::error::{Error, Result};

use super::{ChowClass, Monomial, Ring, VariableSpec};

/// Parses `input` as a class of `ring` (normalized and truncated).
pub fn parse_class(ring: &Ring, input: &str) -> Result<ChowClass> {
    let terms = parse_terms(ring.variables(), input)?;
    Ok(ChowClass::from_terms(ring, terms))
}

/// Parses raw terms against a variable table. Used by [`parse_class`] and by
/// code that needs to write down rule replacements before a ring exists.
pub(crate) fn parse_terms(
    variables: &[VariableSpec],
    input: &str,
) -> Result<Vec<(Monomial, Rat)>> {
    Parser { variables, bytes: input.as_bytes(), pos: 0 }.parse()
}

struct Parser<'a> {
    variables: &'a [VariableSpec],
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Vec<(Monomial, Rat)>> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.at_end() {
            return Ok(terms);
        }
        let mut sign = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                1
            }
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            _ => 1,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
            self.skip_ws();
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(c) => {
                    return Err(Error::Syntax {
                        at: self.pos,
                        what: format!("expected `+` or `-`, found `{}`", c as char),
                    })
                }
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rat)> {
        self.skip_ws();
        let mut exps = vec![0u32; self.variables.len()];
        let coeff;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer()?;
                self.skip_ws();
                let denom = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Syntax { at, what: "zero denominator".into() });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                coeff = Rat::new(numer, denom);
                // Optional variable part after the coefficient.
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                        self.varpow(&mut exps)?;
                    } else {
                        break;
                    }
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                coeff = Rat::from_integer(BigInt::from(1));
                self.varpow(&mut exps)?;
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                        self.varpow(&mut exps)?;
                    } else {
                        break;
                    }
                }
            }
            Some(c) => {
                return Err(Error::Syntax {
                    at: self.pos,
                    what: format!("expected a term, found `{}`", c as char),
                })
            }
            None => {
                return Err(Error::Syntax { at: self.pos, what: "expected a term".into() })
            }
        }
        Ok((Monomial(exps), coeff))
    }

    fn varpow(&mut self, exps: &mut [u32]) -> Result<()> {
        self.skip_ws();
        let at = self.pos;
        let name = self.identifier()?;
        let index = self
            .variables
            .iter()
            .position(|v| v.name == name)
            .ok_or(Error::UnknownVariable { name: name.clone(), at })?;
        let mut power = 1u32;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let n = self.integer()?;
            power = u32::try_from(&n).map_err(|_| Error::Syntax {
                at,
                what: "exponent out of range".into(),
            })?;
        }
        exps[index] += power;
        Ok(())
    }

    fn identifier(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => {
                return Err(Error::Syntax {
                    at: self.pos,
                    what: "expected a variable name".into(),
                })
            }
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap().to_string())
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(Error::Syntax { at: start, what: "expected a number".into() });
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }
}
