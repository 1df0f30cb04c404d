//! Recursive-descent parser for polynomial text such as `3*t^9 - 2*t*w^2`
//! or `(2*v - s^4)^3 + 27/8*t^4`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Polynomial, Rational, VariableContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

pub fn parse_polynomial(ctx: &Arc<VariableContext>, text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser { ctx, src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Arc<VariableContext>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> ParseError {
        ParseError { offset: self.pos, message: msg.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(ParseError { offset: at, message: "division by zero".into() });
                }
                acc = acc.scale(&Rational::new(BigInt::one(), d));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| ParseError { offset: at, message: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.ctx, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Polynomial::var(self.ctx, name).map_err(|_| ParseError {
                    offset: start,
                    message: format!("unknown variable `{name}`"),
                })
            }
            Some(c) => Err(self.error(&format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_powers() {
        let ctx = VariableContext::new([("t", 2), ("w", 8)]).unwrap();
        let p = parse_polynomial(&ctx, "27/8*t^4 - 6*w").unwrap();
        assert_eq!(p.to_string(), "27/8*t^4 - 6*w");
        let q = parse_polynomial(&ctx, " t^9 - 3 * t * w^2 ").unwrap();
        assert_eq!(q.to_string(), "t^9 - 3*t*w^2");
        assert_eq!(parse_polynomial(&ctx, "-(t - w)^2").unwrap().to_string(), "-w^2 + 2*t*w - t^2");
    }

    #[test]
    fn reports_offsets() {
        let ctx = VariableContext::new([("t", 2)]).unwrap();
        let e = parse_polynomial(&ctx, "t + x").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_polynomial(&ctx, "t^").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse_polynomial(&ctx, "(t + 1").is_err());
        assert!(parse_polynomial(&ctx, "t/0").is_err());
        assert!(parse_polynomial(&ctx, "").is_err());
        assert!(parse_polynomial(&ctx, "t t").is_err());
    }
}
