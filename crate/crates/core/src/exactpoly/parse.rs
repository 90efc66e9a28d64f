//! Recursive-descent reader for the polynomial text format. Accepts the
//! canonical `coef*x^e*...` output plus parentheses and integer powers of
//! parenthesized groups, which keeps hand-written test polynomials short.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{MultiPoly, PolyRing};
use super::PolyError;

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

pub(crate) fn parse_poly(ring: &PolyRing, text: &str) -> Result<MultiPoly, PolyError> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse(format!(
            "{msg} at byte {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(b'-') => {
                self.pos += 1;
                return Ok(-self.factor()?);
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    self.ring.constant(BigRational::new(num, den))
                } else {
                    self.ring.constant(BigRational::from_integer(num))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.ring.var(name)?
            }
            _ => return Err(self.err("expected a factor")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parentheses_and_powers() {
        let r = PolyRing::new(&["x", "y"]);
        let a = r.parse("(x + y)^2").unwrap();
        let b = r.parse("x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(r.parse("-(x)").unwrap(), r.parse("-x").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        let r = PolyRing::new(&["x"]);
        assert!(r.parse("x +").is_err());
        assert!(r.parse("x ) ").is_err());
        assert!(r.parse("1/0").is_err());
        assert!(matches!(r.parse("y"), Err(PolyError::UnknownVariable(_))));
    }
}
