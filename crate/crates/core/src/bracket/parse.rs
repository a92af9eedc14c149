//! Reader for bracket expressions as they are usually written by hand.
//!
//! ```text
//! expr    := ["+" | "-"] product (("+" | "-") product)*
//! product := factor (["*"] factor)*
//! factor  := rational | bracket | "(" expr ")"
//! bracket := "[" indices "]" | "<" indices ">" | "⟨" indices "⟩"
//! indices := digit-run | integer ((" " | ",") integer)*
//! ```
//!
//! A single run of digits inside a bracket is read one index per digit, so
//! `[125]` and `[1 2 5]` denote the same bracket. Parenthesized sums are
//! distributed, and the result is a flat list of terms without any sign
//! normalization.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multipoly::rational::parse_rational_lenient;
use crate::multipoly::Side;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBracket {
    pub side: Side,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawTerm {
    pub coeff: Rational,
    pub brackets: Vec<RawBracket>,
}

impl RawTerm {
    fn one() -> Self {
        RawTerm {
            coeff: Rational::one(),
            brackets: Vec::new(),
        }
    }

    fn times(&self, other: &RawTerm) -> RawTerm {
        let mut brackets = self.brackets.clone();
        brackets.extend(other.brackets.iter().cloned());
        RawTerm {
            coeff: &self.coeff * &other.coeff,
            brackets,
        }
    }
}

struct Reader {
    chars: Vec<char>,
    pos: usize,
}

impl Reader {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("character {}", self.pos), msg)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        self.skip_ws();
        let mut negative = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negative = c == '-';
            self.pos += 1;
        }
        loop {
            let terms = self.product()?;
            out.extend(terms.into_iter().map(|mut t| {
                if negative {
                    t.coeff = -t.coeff;
                }
                t
            }));
            self.skip_ws();
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Vec<RawTerm>> {
        let mut acc = vec![RawTerm::one()];
        let mut count = 0;
        loop {
            self.skip_ws();
            if count > 0 && self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
            }
            let factor = match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.skip_ws();
                    if self.peek() != Some(')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    inner
                }
                Some('[') => vec![self.bracket(Side::A, ']')?],
                Some('<') => vec![self.bracket(Side::B, '>')?],
                Some('⟨') => vec![self.bracket(Side::B, '⟩')?],
                Some(c) if c.is_ascii_digit() => {
                    let mut text = self.digits();
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        text.push('/');
                        text.push_str(&self.digits());
                    }
                    let coeff =
                        parse_rational_lenient(&text).ok_or_else(|| self.err("bad coefficient"))?;
                    vec![RawTerm {
                        coeff,
                        brackets: Vec::new(),
                    }]
                }
                _ if count > 0 => return Ok(acc),
                _ => return Err(self.err("expected a bracket, coefficient or '('")),
            };
            acc = acc
                .iter()
                .flat_map(|a| factor.iter().map(move |f| a.times(f)))
                .filter(|t| !t.coeff.is_zero())
                .collect();
            count += 1;
        }
    }

    fn bracket(&mut self, side: Side, close: char) -> Result<RawTerm> {
        self.pos += 1;
        let mut groups: Vec<String> = Vec::new();
        loop {
            while self.peek().is_some_and(|c| c.is_whitespace() || c == ',') {
                self.pos += 1;
            }
            match self.peek() {
                Some(c) if c == close => {
                    self.pos += 1;
                    break;
                }
                Some(c) if c.is_ascii_digit() => groups.push(self.digits()),
                _ => return Err(self.err(format!("expected index or '{close}'"))),
            }
        }
        let indices: Vec<usize> = if groups.len() == 1 {
            groups[0]
                .chars()
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect()
        } else {
            groups
                .iter()
                .map(|g| g.parse().map_err(|_| self.err("index too large")))
                .collect::<Result<_>>()?
        };
        if indices.is_empty() {
            return Err(self.err("empty bracket"));
        }
        Ok(RawTerm {
            coeff: Rational::one(),
            brackets: vec![RawBracket { side, indices }],
        })
    }
}

/// Parses a bracket expression into distributed raw terms.
pub fn parse_terms(src: &str) -> Result<Vec<RawTerm>> {
    let mut r = Reader {
        chars: src.chars().collect(),
        pos: 0,
    };
    let terms = r.expr()?;
    r.skip_ws();
    if r.pos != r.chars.len() {
        return Err(r.err("unexpected trailing input"));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn compact_and_spaced_indices_agree() {
        let a = parse_terms("[125]<34>").unwrap();
        let b = parse_terms("[1 2 5] ⟨3, 4⟩").unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].brackets[0].indices, vec![1, 2, 5]);
        assert_eq!(a[0].brackets[1].side, Side::B);
    }

    #[test]
    fn multi_digit_indices_need_separators() {
        let t = parse_terms("[10 11]").unwrap();
        assert_eq!(t[0].brackets[0].indices, vec![10, 11]);
    }

    #[test]
    fn distributes_parentheses() {
        let t = parse_terms("-[12](3<12> - <13>) + 1/2 [34]").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].coeff, rat(-3));
        assert_eq!(t[1].coeff, rat(1));
        assert_eq!(t[2].coeff, crate::ratio(1, 2));
        assert_eq!(t[1].brackets.len(), 2);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("[12").is_err());
        assert!(parse_terms("[12] ]").is_err());
        assert!(parse_terms("").is_err());
        assert!(parse_terms("[]").is_err());
    }
}
