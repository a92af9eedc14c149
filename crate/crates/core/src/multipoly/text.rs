//! Text grammar for polynomials over the rationals.
//!
//! ```text
//! poly   := "0" | term (("+" | "-") term)*
//! term   := ["-"] (coeff ("*" factor)* | factor ("*" factor)*)
//! factor := ("a" | "b") "[" row "," col "]" ["^" exp]
//! ```
//!
//! Printing is canonical (term order of the map, `1` coefficients elided),
//! so `parse(print(p)) == p`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use super::poly::{Monomial, Polynomial, Side, VarId};
use super::rational::format_rational;
use crate::error::Error;
use crate::Rational;

impl fmt::Display for Polynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("byte {}", self.pos), msg)
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn digits(&mut self) -> Result<&'a str, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<usize, Error> {
        let s = self.digits()?;
        s.parse().map_err(|_| self.err("integer too large"))
    }

    fn factor(&mut self) -> Result<(VarId, u32), Error> {
        let side = match self.peek() {
            Some(b'a') => Side::A,
            Some(b'b') => Side::B,
            _ => return Err(self.err("expected variable 'a[..]' or 'b[..]'")),
        };
        self.pos += 1;
        self.expect(b'[')?;
        let row = self.small_int()?;
        self.expect(b',')?;
        let col = self.small_int()?;
        self.expect(b']')?;
        if row == 0 || col == 0 || row > u16::MAX as usize || col > u16::MAX as usize {
            return Err(self.err("variable index out of range"));
        }
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.small_int()? as u32;
        }
        Ok((VarId::new(side, row, col), exp))
    }

    fn term(&mut self) -> Result<(Monomial, Rational), Error> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let num = self.digits()?;
            let mut text = num.to_string();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                text.push('/');
                text.push_str(self.digits()?);
            }
            coeff = super::rational::parse_rational_lenient(&text)
                .ok_or_else(|| self.err("invalid coefficient"))?;
        } else {
            factors.push(self.factor()?);
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok((Monomial::from_factors(factors), coeff))
    }
}

impl FromStr for Polynomial<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut p = Polynomial::zero();
        cur.skip_ws();
        let mut negative = false;
        if cur.peek() == Some(b'-') {
            negative = true;
            cur.pos += 1;
            cur.skip_ws();
        }
        loop {
            let (m, c) = cur.term()?;
            p.add_term(m, &if negative { -c } else { c });
            cur.skip_ws();
            match cur.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(cur.err("expected '+' or '-'")),
            }
            cur.pos += 1;
            cur.skip_ws();
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_canonically() {
        let p: Polynomial<Rational> = "b[1,1]*a[1,1] - 1/2*a[1,2]^2 + 3".parse().unwrap();
        assert_eq!(p.to_string(), "3 + a[1,1]*b[1,1] - 1/2*a[1,2]^2");
        assert_eq!("0".parse::<Polynomial<Rational>>().unwrap(), Polynomial::zero());
        assert_eq!(Polynomial::<Rational>::zero().to_string(), "0");
    }

    #[test]
    fn cancelling_terms_vanish() {
        let p: Polynomial<Rational> = "a[1,1] - a[1,1]".parse().unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn reports_position() {
        let err = "a[1,1] * c[2,2]".parse::<Polynomial<Rational>>().unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
