//! Parser for polynomial text such as `x^2 - 1/2*x + 3`.
//!
//! Accepts the canonical rendering plus ordinary algebraic input: sums,
//! products (explicit `*` or juxtaposition like `2x`), division by nonzero
//! constants, nonnegative integer powers and parentheses.

use std::str::FromStr;

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    var: u8,
}

impl<K: Scalar + FromStr> Polynomial<K> {
    /// Parses `text` as a polynomial in the indeterminate `var`.
    pub fn parse_in(text: &str, var: char) -> Result<Self> {
        let mut parser = PolyParser {
            src: text.as_bytes(),
            pos: 0,
            var: u8::try_from(var).expect("ASCII variable name"),
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

impl<K: Scalar + FromStr> FromStr for Polynomial<K> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, 'x')
    }
}

impl PolyParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::PolyParse {
            column: self.pos + 1,
            message: message.to_string(),
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<K: Scalar + FromStr>(&mut self) -> Result<Polynomial<K>> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
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

    fn starts_primary(&mut self) -> bool {
        matches!(self.peek(), Some(b) if b == self.var || b == b'(' || b.is_ascii_digit())
    }

    fn term<K: Scalar + FromStr>(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let divisor: Polynomial<K> = self.power()?;
                match divisor.degree() {
                    Some(0) => {
                        let inv = K::one() / divisor.coeff(0);
                        acc = acc.scale(&inv);
                    }
                    None => {
                        self.pos = at;
                        return Err(self.error("division by zero"));
                    }
                    Some(_) => {
                        self.pos = at;
                        return Err(self.error("division by a non-constant polynomial"));
                    }
                }
            } else if self.starts_primary() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power<K: Scalar + FromStr>(&mut self) -> Result<Polynomial<K>> {
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII");
            let e: usize = digits
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary<K: Scalar + FromStr>(&mut self) -> Result<Polynomial<K>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b == self.var => {
                self.pos += 1;
                Ok(Polynomial::x())
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII");
                let c = K::from_str(digits).map_err(|_| self.error("bad number"))?;
                Ok(Polynomial::constant(c))
            }
            _ => Err(self.error(&format!(
                "expected a number, '{}' or '('",
                char::from(self.var)
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type P = Polynomial<BigRational>;

    #[test]
    fn parses_canonical_and_loose_forms() {
        let p: P = "x^2 - 1/2*x + 3".parse().unwrap();
        assert_eq!(p.to_string(), "x^2 - 1/2*x + 3");
        let q: P = "x^3/6".parse().unwrap();
        assert_eq!(q.to_string(), "1/6*x^3");
        let r: P = "(x+1)^2 - 2x".parse().unwrap();
        assert_eq!(r.to_string(), "x^2 + 1");
        let s = P::parse_in("t^2 - t^3/3", 't').unwrap();
        assert_eq!(s.render('t'), "-1/3*t^3 + t^2");
        assert_eq!("-x".parse::<P>().unwrap().to_string(), "-x");
        assert_eq!("0".parse::<P>().unwrap(), P::zero());
    }

    #[test]
    fn reports_column_of_errors() {
        match "x + * 2".parse::<P>() {
            Err(Error::PolyParse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!("x / (x - 1)".parse::<P>().is_err());
        assert!("x / 0".parse::<P>().is_err());
        assert!("y".parse::<P>().is_err());
        assert!("x)".parse::<P>().is_err());
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(coeffs in prop::collection::vec((-20i64..20, 1i64..9), 0..7)) {
            let p = P::new(coeffs.iter().map(|&(n, d)| BigRational::from_frac(n, d)).collect());
            let back: P = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
