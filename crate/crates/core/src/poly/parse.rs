//! Recursive-descent parser for the equation language:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | ident | '(' expr ')' | '-' factor
//! ```
//!
//! Integers carry an optional leading `-` (so `-2^2` is `4`); a `-` before
//! anything else negates the following factor. There is no implicit
//! multiplication. Whitespace is ignored between tokens.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use thiserror::Error;

use super::{IntPoly, PolyError, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax {
        offset: usize,
        expected: &'static str,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("exponent overflow at byte {offset} (limit 2^31 - 1)")]
    ExponentOverflow { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::ExponentOverflow { offset } => *offset,
        }
    }
}

/// Parses `text` into a canonical polynomial over `variables`.
pub fn parse_poly(text: &str, variables: &[String]) -> Result<IntPoly, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: variables,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.syntax("expression"));
    }
    let out = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.syntax("operator or end of input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            expected,
        }
    }

    fn overflow(offset: usize) -> impl Fn(PolyError) -> ParseError {
        move |_| ParseError::ExponentOverflow { offset }
    }

    fn expr(&mut self) -> Result<IntPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Ok(acc);
            }
            let at = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.checked_mul(&rhs).map_err(Self::overflow(at))?;
        }
    }

    fn factor(&mut self) -> Result<IntPoly, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'-') && !self.digit_follows_minus() {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(-&inner);
        }
        let base = self.base()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let exp = self.uint()?;
        base.checked_pow(exp).map_err(Self::overflow(at))
    }

    fn digit_follows_minus(&self) -> bool {
        self.src
            .get(self.pos + 1)
            .is_some_and(|c| c.is_ascii_digit())
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("unsigned exponent"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match digits.parse::<u64>() {
            Ok(v) if v <= MAX_EXPONENT as u64 => Ok(v as u32),
            _ => Err(ParseError::ExponentOverflow { offset: start }),
        }
    }

    fn base(&mut self) -> Result<IntPoly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.syntax("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let start = self.pos;
                if c == b'-' {
                    self.pos += 1;
                }
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let lit = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let value: BigInt = lit.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    expected: "integer",
                })?;
                Ok(IntPoly::constant(self.vars, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(IntPoly::var(self.vars, i)),
                    None => Err(ParseError::UnknownIdentifier {
                        name: name.to_string(),
                        offset: start,
                    }),
                }
            }
            _ => Err(self.syntax("integer, identifier or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use num_bigint::BigInt;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn reads_curve() {
        let v = vars(&["x", "y"]);
        let p = parse_poly("y^2 - (x^3 + x)", &v).unwrap();
        let expect = IntPoly::from_terms(
            &v,
            [
                (alloc::vec![0, 2], BigInt::from(1)),
                (alloc::vec![3, 0], BigInt::from(-1)),
                (alloc::vec![1, 0], BigInt::from(-1)),
            ],
        );
        assert_eq!(p, expect);
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn zero_forms() {
        assert!(parse_poly("0", &vars(&["x"])).unwrap().is_zero());
        assert!(parse_poly("(t - 4)*(t + 4) - (t^2 - 16)", &vars(&["t"]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn minus_conventions() {
        let v = vars(&["x"]);
        let c = |s: &str| parse_poly(s, &v).unwrap();
        assert_eq!(c("-2^2"), c("4"));
        assert_eq!(c("-x^2"), c("0 - x^2"));
        assert_eq!(c("x - -3"), c("x + 3"));
        assert_eq!(c("2*-x"), c("-2*x"));
    }

    #[test]
    fn errors_carry_offsets() {
        let v = vars(&["x", "y"]);
        assert_eq!(
            parse_poly("x + z", &v),
            Err(ParseError::UnknownIdentifier {
                name: "z".into(),
                offset: 4
            })
        );
        assert_eq!(parse_poly("x +", &v).unwrap_err().offset(), 3);
        assert_eq!(parse_poly("x y", &v).unwrap_err().offset(), 2);
        assert_eq!(parse_poly("(x + y", &v).unwrap_err().offset(), 6);
        assert_eq!(parse_poly("", &v).unwrap_err().offset(), 0);
        assert_eq!(
            parse_poly("x^2147483648", &v),
            Err(ParseError::ExponentOverflow { offset: 2 })
        );
        assert_eq!(
            parse_poly("x^2147483647 * x", &v),
            Err(ParseError::ExponentOverflow { offset: 13 })
        );
        assert!(parse_poly("x^2147483647", &v).is_ok());
    }

    #[test]
    fn big_coefficients() {
        let v = vars(&["x"]);
        let p = parse_poly("123456789012345678901234567890*x - 1", &v).unwrap();
        assert_eq!(p.to_string(), "123456789012345678901234567890*x - 1");
    }
}
