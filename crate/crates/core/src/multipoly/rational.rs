//! Canonical text form of exact rationals: `p` or `p/q`, lowest terms,
//! positive denominator, no redundant signs or leading zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Why a rational string was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    Empty,
    Malformed(String),
    ZeroDenominator,
    NotLowestTerms { canonical: String },
    NonCanonical { canonical: String },
}

impl std::fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RationalParseError::Empty => write!(f, "empty rational"),
            RationalParseError::Malformed(s) => write!(f, "malformed rational {s:?}"),
            RationalParseError::ZeroDenominator => write!(f, "zero denominator"),
            RationalParseError::NotLowestTerms { canonical } => {
                write!(f, "not in lowest terms (write {canonical:?})")
            }
            RationalParseError::NonCanonical { canonical } => {
                write!(f, "non-canonical form (write {canonical:?})")
            }
        }
    }
}

impl std::error::Error for RationalParseError {}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a rational, accepting only the canonical form produced by
/// [`format_rational`].
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num_str, den_str) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let malformed = || RationalParseError::Malformed(s.to_string());
    let num = parse_digits(num_str).ok_or_else(malformed)?;
    let den = match den_str {
        Some(d) => parse_digits(d).ok_or_else(malformed)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator);
    }
    let signed = if negative { -num.clone() } else { num.clone() };
    let value = Rational::new(signed, den.clone());
    let canonical = format_rational(&value);
    if !num.gcd(&den).is_one() && !(num.is_zero() && den.is_one()) {
        return Err(RationalParseError::NotLowestTerms { canonical });
    }
    if canonical != s {
        return Err(RationalParseError::NonCanonical { canonical });
    }
    debug_assert!(!value.denom().is_negative());
    Ok(value)
}

/// Lenient variant used by the text grammars: accepts any `p/q`.
pub(crate) fn parse_rational_lenient(s: &str) -> Option<Rational> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (parse_digits(n)?, parse_digits(d)?),
        None => (parse_digits(body)?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    let n = if negative { -n } else { n };
    Some(Rational::new(n, d))
}
