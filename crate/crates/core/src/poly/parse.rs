//! Recursive-descent parser for polynomial expressions in `x` and `y`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nonneg-integer)?
//! base   := integer | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Juxtaposition (`2x`) is rejected.

use num_bigint::BigInt;

use super::PolyZ;
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 4096;

/// Parses and fully expands a polynomial expression.
pub fn parse_poly(text: &str) -> Result<PolyZ> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let poly = parser.expr()?;
    parser.skip_ws();
    match parser.peek() {
        None => Ok(poly),
        Some(b')') => Err(parser.error("unbalanced ')'")),
        Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
            Err(parser.error("implicit multiplication is not allowed; use '*'"))
        }
        Some(c) => Err(parser.error(format!("unexpected character '{}'", c as char))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Skips whitespace and consumes `c` if it is next.
    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, message: message.into() }
    }

    fn expr(&mut self) -> Result<PolyZ> {
        let negate = self.eat(b'-');
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
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

    fn term(&mut self) -> Result<PolyZ> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyZ> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'-') => Err(Error::NegativeExponent { pos: at }),
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let e = digits
                    .parse::<u32>()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or(Error::ExponentTooLarge { pos: at, max: MAX_EXPONENT })?;
                Ok(base.pow(e))
            }
            _ => Err(self.error("expected a nonnegative integer exponent after '^'")),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn base(&mut self) -> Result<PolyZ> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let value: BigInt = self.digits().parse().unwrap();
                Ok(PolyZ::constant(value))
            }
            Some(b'x') | Some(b'y') if !self.ident_continues(1) => {
                let c = self.peek().unwrap();
                self.pos += 1;
                Ok(if c == b'x' { PolyZ::x() } else { PolyZ::y() })
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Err(Error::UnknownVariable { pos: start, name })
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => Err(self.error("unary minus is only allowed at the start of an expression")),
            None => Err(self.error("unexpected end of input")),
            Some(c) if c.is_ascii() => Err(self.error(format!("unexpected character '{}'", c as char))),
            Some(_) => Err(self.error("unexpected non-ASCII character")),
        }
    }

    /// True when the identifier starting at the cursor is longer than `len`.
    fn ident_continues(&self, len: usize) -> bool {
        self.src
            .get(self.pos + len)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BiPoly;

    #[test]
    fn expands_examples() {
        let f = parse_poly("x*y+1").unwrap();
        assert_eq!(f.degrees(), Some((1, 1)));
        assert_eq!(f, PolyZ::from_rows(&[vec![1, 0], vec![0, 1]]));

        let f = parse_poly("x^9*y-9*x^9-2*x+9*y+2").unwrap();
        assert_eq!(f.degrees(), Some((9, 1)));
        assert_eq!(f.height().unwrap(), BigInt::from(9));

        assert!(parse_poly("y-y").unwrap().is_zero());
    }

    #[test]
    fn parentheses_and_unary_minus() {
        assert_eq!(parse_poly("(x+1)*(y+1)").unwrap(), parse_poly("x*y+x+y+1").unwrap());
        assert_eq!(parse_poly("-(x-1)^2").unwrap(), parse_poly("-x^2+2*x-1").unwrap());
        assert_eq!(parse_poly("(-x)").unwrap(), parse_poly("-x").unwrap());
        assert_eq!(parse_poly("  2 * x ^ 3 ").unwrap(), PolyZ::monomial(2, 3, 0));
        assert_eq!(parse_poly("2^70").unwrap(), PolyZ::constant(BigInt::from(2).pow(70)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_poly("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x^-2"), Err(Error::NegativeExponent { pos: 2 })));
        assert!(matches!(parse_poly("x+z"), Err(Error::UnknownVariable { pos: 2, .. })));
        assert!(matches!(parse_poly("xy"), Err(Error::UnknownVariable { pos: 0, .. })));
        assert!(matches!(parse_poly("x*-y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x+1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x+1)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("x^2^3"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^99999"), Err(Error::ExponentTooLarge { .. })));
    }
}
