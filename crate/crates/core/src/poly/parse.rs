//! Plain-text polynomial syntax.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! poly   :=  ['-'] term (('+' | '-') term)*
//! term   :=  factor ('*' factor)*
//! factor :=  integer | variable ['^' integer]
//! ```
//!
//! This is exactly the language [`MultiPoly`]'s `Display` emits, e.g.
//! `-x1^3*y3 + 2`, so print → parse is the identity.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Monomial, MultiPoly, PolyError, Ring};

impl Ring {
    /// Parses an integer polynomial over this ring's variables.
    pub fn parse(&self, input: &str) -> Result<MultiPoly<BigInt>, PolyError> {
        Parser {
            ring: self,
            bytes: input.as_bytes(),
            pos: 0,
        }
        .parse()
    }

    /// Parses, panicking on failure; for building fixed constants.
    pub fn parse_unwrap(&self, input: &str) -> MultiPoly<BigInt> {
        self.parse(input)
            .unwrap_or_else(|e| panic!("invalid polynomial `{input}`: {e}"))
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<MultiPoly<BigInt>, PolyError> {
        let mut out = self.ring.zero();
        self.skip_ws();
        if self.bytes.is_empty() || self.pos >= self.bytes.len() {
            return Err(self.err("empty input"));
        }
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (m, c) = self.term()?;
            let signed = if sign < 0 { -c } else { c };
            if !signed.is_zero() {
                out.add_term(m, signed);
            }
            self.skip_ws();
            if self.pos >= self.bytes.len() {
                return Ok(out);
            }
            sign = match self.bytes[self.pos] {
                b'+' => 1,
                b'-' => -1,
                other => return Err(self.err(format!("unexpected `{}`", other as char))),
            };
            self.pos += 1;
        }
    }

    /// One product of factors; returns the accumulated monomial and coefficient.
    fn term(&mut self) -> Result<(Monomial, BigInt), PolyError> {
        let mut mono = Monomial::one(self.ring.num_vars());
        let mut coeff = BigInt::from(1);
        loop {
            self.skip_ws();
            if self.pos >= self.bytes.len() {
                return Err(self.err("expected a factor"));
            }
            match self.bytes[self.pos] {
                b'0'..=b'9' => {
                    coeff *= self.integer()?;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = self.identifier();
                    let idx = self.ring.index(&name).ok_or_else(|| {
                        PolyError::UnknownVariable(name.clone(), self.ring.to_string())
                    })?;
                    let exp = if self.eat(b'^') {
                        let e = self.integer()?;
                        u32::try_from(e).map_err(|_| self.err("exponent out of range"))?
                    } else {
                        1
                    };
                    mono = mono.mul(&Monomial::var_pow(self.ring.num_vars(), idx, exp));
                }
                other => return Err(self.err(format!("unexpected `{}`", other as char))),
            }
            self.skip_ws();
            if !self.eat(b'*') {
                return Ok((mono, coeff));
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(BigInt::parse_bytes(&self.bytes[start..self.pos], 10)
            .expect("digits form a valid integer"))
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            at: self.pos,
            msg: msg.into(),
        }
    }
}

impl Monomial {
    fn var_pow(num_vars: usize, idx: usize, exp: u32) -> Monomial {
        let mut exps = vec![0; num_vars];
        exps[idx] = exp;
        Monomial::from_exponents(exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;

    fn ring() -> Ring {
        Ring::new(&["x1", "y1", "y3"])
    }

    #[test]
    fn parses_display_example() {
        let r = ring();
        let f = r.parse("-x1^3*y3 + 2").unwrap();
        assert_eq!(f.to_string(), "-x1^3*y3 + 2");
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn round_trips() {
        let r = ring();
        for text in [
            "0",
            "5",
            "-7",
            "x1",
            "-y3",
            "2*x1^2 - 3*x1*y1 + y1^2",
            "x1^3 + y1^3 + 1",
            "-y3^3*x1 + y3 - 12",
        ] {
            let f = r.parse(text).unwrap();
            let printed = f.to_string();
            let g = r.parse(&printed).unwrap();
            assert_eq!(f, g, "round trip through `{printed}`");
        }
    }

    #[test]
    fn canonicalizes_while_parsing() {
        let r = ring();
        // Like terms merge; zero sums vanish.
        assert_eq!(r.parse("x1 + x1").unwrap().to_string(), "2*x1");
        assert!(r.parse("x1 - x1").unwrap().is_zero());
        assert_eq!(r.parse("3 * x1 * x1").unwrap().to_string(), "3*x1^2");
    }

    #[test]
    fn rejects_unknown_variable() {
        let err = ring().parse("x1 + w").unwrap_err();
        match err {
            PolyError::UnknownVariable(name, _) => assert_eq!(name, "w"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_garbage() {
        let r = ring();
        assert!(r.parse("").is_err());
        assert!(r.parse("x1 +").is_err());
        assert!(r.parse("x1 ^").is_err());
        assert!(r.parse("(x1)").is_err());
        assert!(r.parse("x1 x1").is_err());
        assert!(r.parse("2..3").is_err());
    }

    #[test]
    fn big_coefficients_survive() {
        let r = ring();
        let f: IntPoly = r.parse("123456789012345678901234567890*x1 - 1").unwrap();
        assert_eq!(
            f.to_string(),
            "123456789012345678901234567890*x1 - 1"
        );
    }
}
