//! Recursive-descent parser for scalar expressions.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := ['-'] digits | '(' ['-'] digits ')'
//! atom     := digits | 'q' | '(' expr ')'
//! ```
//!
//! `*` and `/` associate to the left, so `1/2*q` parses as `(1/2)*q`; the
//! exponent of `^` is restricted to integer literals.

use super::{Scalar, ScalarField};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;

pub(super) fn parse_scalar(field: &ScalarField, input: &str) -> Result<Scalar> {
    let mut parser = Parser {
        field,
        bytes: input.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    field: &'a ScalarField,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::InvalidParameter(format!(
            "scalar expression parse error at byte {}: {}",
            self.pos, message
        ))
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exponent = self.exponent()?;
            base.pow(exponent)
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'(') {
            let value = self.signed_integer()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')' after exponent"));
            }
            Ok(value)
        } else {
            self.signed_integer()
        }
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let negative = self.eat(b'-');
        let digits = self.digits()?;
        let value: i64 = digits
            .parse()
            .map_err(|_| self.error("integer exponent out of range"))?;
        Ok(if negative { -value } else { value })
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let value = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(value)
            }
            Some(b'q') => {
                self.pos += 1;
                self.skip_ws();
                Ok(self.field.q())
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let n: BigInt = digits.parse().expect("digit run parses as an integer");
                Ok(self.field.from_rational(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.error("expected an integer, 'q' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digit bytes are valid UTF-8")
            .to_string();
        self.skip_ws();
        Ok(text)
    }
}

#[cfg(test)]
mod tests {
    use super::super::ScalarField;
    use crate::Error;

    #[test]
    fn parses_rationals_and_powers() {
        let field = ScalarField::rational_i64(2).unwrap();
        assert_eq!(field.parse("3/4").unwrap().to_string(), "3/4");
        assert_eq!(field.parse("q^2+1").unwrap(), field.from_i64(5));
        assert_eq!(field.parse("q^-2").unwrap().to_string(), "1/4");
        assert_eq!(field.parse("q^(-2)").unwrap().to_string(), "1/4");
        assert_eq!(field.parse(" - (1 + q) * 2 ").unwrap(), field.from_i64(-6));
        assert_eq!(field.parse("2^10").unwrap(), field.from_i64(1024));
    }

    #[test]
    fn parses_in_symbolic_modes() {
        let fun = ScalarField::rational_function();
        let value = fun.parse("(q^2+1)/(q-1)").unwrap();
        assert_eq!(value.to_string(), "(q^2+1)/(q-1)");
        assert_eq!(fun.parse("1/2*q").unwrap().to_string(), "1/2*q");
        let cyc = ScalarField::cyclotomic(4).unwrap();
        assert_eq!(cyc.parse("q^2").unwrap(), cyc.from_i64(-1));
    }

    #[test]
    fn rejects_malformed_input() {
        let field = ScalarField::rational_i64(2).unwrap();
        for bad in ["", "q+", "(q", "q^q", "x", "1..2", "q 2"] {
            assert!(
                matches!(field.parse(bad), Err(Error::InvalidParameter(_))),
                "input {bad:?} should fail"
            );
        }
    }

    #[test]
    fn division_by_zero_reports_arithmetic_error() {
        let field = ScalarField::rational_i64(2).unwrap();
        assert!(matches!(field.parse("1/0"), Err(Error::Arithmetic(_))));
        assert!(matches!(field.parse("0^-1"), Err(Error::Arithmetic(_))));
    }
}
