//! The bracket algebra: maximal-minor symbols `[I]` (side A) and `<J>`
//! (side B), their products, straightening into standard monomials, and
//! expansion back into matrix entries.
//!
//! A monomial `[I_1]...[I_r]` is *standard* when the factors, sorted
//! lexicographically and stacked as rows, form a tableau whose columns are
//! weakly increasing, i.e. `I_1 <= I_2 <= ...` entrywise.

mod parse;
mod standard;
mod straighten;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

pub use parse::{parse_terms, RawBracket, RawTerm};
pub use standard::{enumerate_standard_multilinear, standard_multilinear_count};
pub use straighten::{straighten, straighten_double, Straightener};

use crate::error::{Error, Result};
use crate::multipoly::{generic_matrix, rational::format_rational, Side};
use crate::random::SeededRng;
use crate::scalar::Ring;
use crate::{ExactMatrix, Rational, SparsePolynomial};

/// Sign of the permutation that sorts `seq` (distinct entries assumed).
pub fn sorting_sign<T: Ord>(seq: &[T]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A maximal minor: strictly increasing 1-based column indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bracket {
    indices: Vec<usize>,
    side: Side,
}

impl Bracket {
    /// Sorts `raw` and returns the bracket with the sign of the sorting
    /// permutation, or `None` if an index repeats (the minor vanishes).
    pub fn normalize(side: Side, raw: &[usize], n: usize) -> Result<Option<(Bracket, i8)>> {
        if let Some(&bad) = raw.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(Self::normalize_unchecked(side, raw))
    }

    pub(crate) fn normalize_unchecked(side: Side, raw: &[usize]) -> Option<(Bracket, i8)> {
        let mut indices = raw.to_vec();
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Bracket { indices, side }, sorting_sign(raw)))
    }

    /// Bracket from already sorted distinct indices.
    pub fn new(side: Side, indices: Vec<usize>) -> Bracket {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Bracket { indices, side }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The minor as a polynomial in `a_{ij}` (or `b_{ij}`), rows `1..=size`.
    pub fn expand(&self) -> SparsePolynomial {
        generic_matrix(self.side, self.size(), &self.indices)
            .cofactor_determinant()
            .expect("square by construction")
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.side {
            Side::A => ('[', ']'),
            Side::B => ('⟨', '⟩'),
        };
        write!(f, "{open}")?;
        for (i, x) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "{close}")
    }
}

/// Product of brackets of one side and size, factors sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketMonomial {
    factors: Vec<Bracket>,
}

impl BracketMonomial {
    pub fn one() -> Self {
        BracketMonomial {
            factors: Vec::new(),
        }
    }

    pub fn new(mut factors: Vec<Bracket>) -> Result<Self> {
        if let Some(first) = factors.first() {
            let (side, size) = (first.side, first.size());
            if factors.iter().any(|b| b.side != side || b.size() != size) {
                return Err(Error::Shape(
                    "brackets of one monomial must share side and size".into(),
                ));
            }
        }
        factors.sort();
        Ok(BracketMonomial { factors })
    }

    /// Normalizes raw index lists; `None` when some factor vanishes.
    pub fn from_raw(side: Side, n: usize, raw: &[Vec<usize>]) -> Result<Option<(Self, i8)>> {
        let mut sign = 1i8;
        let mut factors = Vec::with_capacity(raw.len());
        for r in raw {
            match Bracket::normalize(side, r, n)? {
                Some((b, s)) => {
                    sign *= s;
                    factors.push(b);
                }
                None => return Ok(None),
            }
        }
        Ok(Some((Self::new(factors)?, sign)))
    }

    pub fn factors(&self) -> &[Bracket] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn side(&self) -> Option<Side> {
        self.factors.first().map(|b| b.side)
    }

    pub fn bracket_size(&self) -> Option<usize> {
        self.factors.first().map(Bracket::size)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort();
        BracketMonomial { factors }
    }

    /// Multiset of indices over all factors, sorted.
    pub fn content(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|b| b.indices.iter().copied())
            .collect();
        c.sort_unstable();
        c
    }

    /// Semi-standard tableau test on the stacked factors.
    pub fn is_standard(&self) -> bool {
        self.first_violation().is_none()
    }

    /// First adjacent pair `(t, t+1)` of factors and first position `s` with
    /// `factors[t][s] > factors[t+1][s]`.
    pub(crate) fn first_violation(&self) -> Option<(usize, usize)> {
        self.factors.windows(2).enumerate().find_map(|(t, w)| {
            w[0].indices
                .iter()
                .zip(&w[1].indices)
                .position(|(x, y)| x > y)
                .map(|s| (t, s))
        })
    }

    pub fn expand(&self) -> SparsePolynomial {
        self.factors
            .iter()
            .fold(SparsePolynomial::one(), |acc, b| acc.mul_ref(&b.expand()))
    }

    /// Evaluates with each bracket replaced by the corresponding minor.
    pub fn eval(&self, minor: &mut impl FnMut(&Bracket) -> Rational) -> Rational {
        self.factors
            .iter()
            .fold(Rational::one(), |acc, b| acc * minor(b))
    }
}

impl fmt::Display for BracketMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for b in &self.factors {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Element of the bracket algebra of one side and bracket size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketPolynomial {
    side: Side,
    size: usize,
    terms: BTreeMap<BracketMonomial, Rational>,
}

impl BracketPolynomial {
    pub fn zero(side: Side, size: usize) -> Self {
        BracketPolynomial {
            side,
            size,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(side: Side, size: usize, c: Rational) -> Self {
        Self::monomial(side, size, BracketMonomial::one(), c)
    }

    pub fn monomial(side: Side, size: usize, m: BracketMonomial, c: Rational) -> Self {
        let mut p = Self::zero(side, size);
        p.add_term(m, c);
        p
    }

    pub fn bracket(b: Bracket) -> Self {
        let (side, size) = (b.side, b.size());
        Self::monomial(
            side,
            size,
            BracketMonomial { factors: vec![b] },
            Rational::one(),
        )
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn terms(&self) -> &BTreeMap<BracketMonomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &BracketMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: BracketMonomial, c: Rational) {
        debug_assert!(m
            .factors
            .iter()
            .all(|b| b.side == self.side && b.size() == self.size));
        add_into(&mut self.terms, m, c);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.side, self.size);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.side, self.size);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn is_standard(&self) -> bool {
        self.terms.keys().all(BracketMonomial::is_standard)
    }

    /// Substitutes every bracket by its minor in the matrix entries.
    pub fn expand_to_variables(&self) -> SparsePolynomial {
        let mut cache: HashMap<Bracket, SparsePolynomial> = HashMap::new();
        let mut out = SparsePolynomial::zero();
        for (m, c) in &self.terms {
            let mut prod = SparsePolynomial::constant(c.clone());
            for b in &m.factors {
                let e = cache.entry(b.clone()).or_insert_with(|| b.expand());
                prod = prod.mul_ref(e);
            }
            out = out.add_ref(&prod);
        }
        out
    }

    pub fn eval(&self, minor: &mut impl FnMut(&Bracket) -> Rational) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.eval(minor))
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let abs = c.abs();
    if !abs.is_one() {
        write!(f, "{} ", format_rational(&abs))?;
    }
    Ok(())
}

impl fmt::Display for BracketPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            write_coefficient(f, i == 0, c)?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Polynomial in `[I]`-brackets of size `a_size` and `<J>`-brackets of size
/// `b_size` simultaneously; each term is a pair of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleBracketPolynomial {
    a_size: usize,
    b_size: usize,
    terms: BTreeMap<(BracketMonomial, BracketMonomial), Rational>,
}

impl DoubleBracketPolynomial {
    pub fn zero(a_size: usize, b_size: usize) -> Self {
        DoubleBracketPolynomial {
            a_size,
            b_size,
            terms: BTreeMap::new(),
        }
    }

    pub fn a_size(&self) -> usize {
        self.a_size
    }

    pub fn b_size(&self) -> usize {
        self.b_size
    }

    pub fn terms(&self) -> &BTreeMap<(BracketMonomial, BracketMonomial), Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: BracketMonomial, b: BracketMonomial, c: Rational) {
        add_into(&mut self.terms, (a, b), c);
    }

    pub fn coefficient(&self, a: &BracketMonomial, b: &BracketMonomial) -> Rational {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.a_size, self.b_size);
        for ((a, b), x) in &self.terms {
            out.add_term(a.clone(), b.clone(), x * c);
        }
        out
    }

    /// The B-side polynomial multiplying the A-monomial `a`.
    pub fn coefficient_of_a(&self, a: &BracketMonomial) -> BracketPolynomial {
        let mut out = BracketPolynomial::zero(Side::B, self.b_size);
        for ((ma, mb), c) in &self.terms {
            if ma == a {
                out.add_term(mb.clone(), c.clone());
            }
        }
        out
    }

    /// The A-side polynomial multiplying the B-monomial `b`.
    pub fn coefficient_of_b(&self, b: &BracketMonomial) -> BracketPolynomial {
        let mut out = BracketPolynomial::zero(Side::A, self.a_size);
        for ((ma, mb), c) in &self.terms {
            if mb == b {
                out.add_term(ma.clone(), c.clone());
            }
        }
        out
    }

    pub fn a_monomials(&self) -> Vec<BracketMonomial> {
        let mut v: Vec<_> = self.terms.keys().map(|(a, _)| a.clone()).collect();
        v.dedup();
        v
    }

    pub fn b_monomials(&self) -> Vec<BracketMonomial> {
        let mut v: Vec<_> = self.terms.keys().map(|(_, b)| b.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `(A-degree, B-degree)` if every term agrees.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|(a, b)| (a.degree(), b.degree()));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_standard(&self) -> bool {
        self.terms
            .keys()
            .all(|(a, b)| a.is_standard() && b.is_standard())
    }

    pub fn expand_to_variables(&self) -> SparsePolynomial {
        let mut cache: HashMap<BracketMonomial, SparsePolynomial> = HashMap::new();
        let mut out = SparsePolynomial::zero();
        for ((a, b), c) in &self.terms {
            let ea = cache.entry(a.clone()).or_insert_with(|| a.expand()).clone();
            let eb = cache.entry(b.clone()).or_insert_with(|| b.expand());
            out = out.add_ref(&ea.mul_ref(eb).scale(c));
        }
        out
    }

    pub fn eval(
        &self,
        minor_a: &mut impl FnMut(&Bracket) -> Rational,
        minor_b: &mut impl FnMut(&Bracket) -> Rational,
    ) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, ((a, b), c)| {
            acc + c * a.eval(minor_a) * b.eval(minor_b)
        })
    }

    /// Partial evaluation of the A-side: the resulting B-polynomial.
    pub fn eval_a(&self, minor_a: &mut impl FnMut(&Bracket) -> Rational) -> BracketPolynomial {
        let mut out = BracketPolynomial::zero(Side::B, self.b_size);
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), c * a.eval(minor_a));
        }
        out
    }

    /// Builds from parsed raw terms, normalizing bracket signs.
    pub fn from_raw_terms(a_size: usize, b_size: usize, n: usize, raw: &[RawTerm]) -> Result<Self> {
        let mut out = Self::zero(a_size, b_size);
        for t in raw {
            let mut a_raw = Vec::new();
            let mut b_raw = Vec::new();
            for b in &t.brackets {
                let (list, size) = match b.side {
                    Side::A => (&mut a_raw, a_size),
                    Side::B => (&mut b_raw, b_size),
                };
                if b.indices.len() != size {
                    return Err(Error::Shape(format!(
                        "bracket of size {} where size {size} expected",
                        b.indices.len()
                    )));
                }
                list.push(b.indices.clone());
            }
            let Some((ma, sa)) = BracketMonomial::from_raw(Side::A, n, &a_raw)? else {
                continue;
            };
            let Some((mb, sb)) = BracketMonomial::from_raw(Side::B, n, &b_raw)? else {
                continue;
            };
            let sign = Rational::from_integer(i64::from(sa * sb).into());
            out.add_term(ma, mb, &t.coeff * sign);
        }
        Ok(out)
    }

    /// Equality up to a single global factor `±1`; returns that sign.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self == other {
            return Some(1);
        }
        if *self == other.scale(&-Rational::one()) {
            return Some(-1);
        }
        None
    }
}

impl fmt::Display for DoubleBracketPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            write_coefficient(f, i == 0, c)?;
            write!(f, "{a}{b}")?;
        }
        Ok(())
    }
}

impl BracketPolynomial {
    pub fn from_raw_terms(side: Side, size: usize, n: usize, raw: &[RawTerm]) -> Result<Self> {
        let mut out = Self::zero(side, size);
        for t in raw {
            let mut lists = Vec::new();
            for b in &t.brackets {
                if b.side != side || b.indices.len() != size {
                    return Err(Error::Shape(format!(
                        "expected only {side:?}-brackets of size {size}"
                    )));
                }
                lists.push(b.indices.clone());
            }
            if let Some((m, s)) = BracketMonomial::from_raw(side, n, &lists)? {
                out.add_term(m, &t.coeff * Rational::from_integer(i64::from(s).into()));
            }
        }
        Ok(out)
    }
}

/// The minor of `m` on the bracket's (1-based) columns; `m` must have
/// `b.size()` rows.
pub fn bracket_value(m: &ExactMatrix, b: &Bracket) -> Rational {
    let cols: Vec<usize> = b.indices.iter().map(|i| i - 1).collect();
    m.select_columns(&cols)
        .determinant()
        .expect("bracket size equals row count")
}

/// Memoizing minor oracle over a fixed matrix, usable with the `eval`
/// methods.
pub fn minor_oracle(m: &ExactMatrix) -> impl FnMut(&Bracket) -> Rational + '_ {
    let mut cache: HashMap<Vec<usize>, Rational> = HashMap::new();
    move |b: &Bracket| {
        cache
            .entry(b.indices.clone())
            .or_insert_with(|| bracket_value(m, b))
            .clone()
    }
}

/// Random element of the bracket algebra for soundness tests: `terms`
/// monomials of degree `1..=max_degree` with small integer coefficients.
pub fn random_bracket_polynomial(
    rng: &mut SeededRng,
    side: Side,
    size: usize,
    n: usize,
    max_degree: usize,
    terms: usize,
) -> BracketPolynomial {
    use rand::seq::index::sample;
    use rand::Rng;
    let mut p = BracketPolynomial::zero(side, size);
    for _ in 0..terms {
        let degree = rng.gen_range(1..=max_degree);
        let factors = (0..degree)
            .map(|_| {
                let mut idx: Vec<usize> = sample(rng, n, size).into_iter().map(|i| i + 1).collect();
                idx.sort_unstable();
                Bracket::new(side, idx)
            })
            .collect();
        let m = BracketMonomial::new(factors).expect("uniform side and size");
        let c = crate::random::small_nonzero(rng, 5);
        p.add_term(m, c);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(side: Side, lists: &[&[usize]]) -> BracketMonomial {
        let raw: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        BracketMonomial::from_raw(side, 9, &raw).unwrap().unwrap().0
    }

    #[test]
    fn normalization_signs() {
        let (b, s) = Bracket::normalize(Side::A, &[2, 1], 4).unwrap().unwrap();
        assert_eq!((b.indices(), s), (&[1, 2][..], -1));
        assert!(Bracket::normalize(Side::A, &[1, 1], 4).unwrap().is_none());
        let (b, s) = Bracket::normalize(Side::A, &[3, 1, 2], 4).unwrap().unwrap();
        assert_eq!((b.indices(), s), (&[1, 2, 3][..], 1));
        assert!(matches!(
            Bracket::normalize(Side::A, &[1, 5], 4),
            Err(Error::IndexOutOfRange { index: 5, n: 4 })
        ));
    }

    #[test]
    fn standardness_examples() {
        assert!(mono(Side::A, &[&[1, 2], &[1, 2]]).is_standard());
        assert!(mono(Side::A, &[&[1, 3], &[2, 4]]).is_standard());
        assert!(!mono(Side::A, &[&[1, 4], &[2, 3]]).is_standard());
    }

    #[test]
    fn twenty_of_twenty_one_quadrics_standard() {
        let brackets: Vec<Bracket> = (1..=4)
            .flat_map(|i| (i + 1..=4).map(move |j| Bracket::new(Side::A, vec![i, j])))
            .collect();
        let mut total = 0;
        let mut standard = 0;
        for i in 0..brackets.len() {
            for j in i..brackets.len() {
                total += 1;
                let m = BracketMonomial::new(vec![brackets[i].clone(), brackets[j].clone()]).unwrap();
                if m.is_standard() {
                    standard += 1;
                }
            }
        }
        assert_eq!((total, standard), (21, 20));
    }

    #[test]
    fn two_by_two_bracket_expansion() {
        let e = Bracket::new(Side::A, vec![1, 2]).expand();
        let expected: SparsePolynomial = "a[1,1]*a[2,2] - a[1,2]*a[2,1]".parse().unwrap();
        assert_eq!(e, expected);
        let e3 = Bracket::new(Side::B, vec![1, 2, 3]).expand();
        assert_eq!(e3.len(), 6);
        assert_eq!(e3.degree(), Some(3));
        assert!(e3.variables().iter().all(|v| v.side == Side::B));
    }

    #[test]
    fn pluecker_relation_expands_to_zero() {
        let mut p = BracketPolynomial::zero(Side::A, 2);
        p.add_term(mono(Side::A, &[&[1, 2], &[3, 4]]), Rational::one());
        p.add_term(mono(Side::A, &[&[1, 3], &[2, 4]]), -Rational::one());
        p.add_term(mono(Side::A, &[&[1, 4], &[2, 3]]), Rational::one());
        assert!(p.expand_to_variables().is_zero());
    }

    #[test]
    fn mixed_monomials_rejected() {
        let r = BracketMonomial::new(vec![
            Bracket::new(Side::A, vec![1, 2]),
            Bracket::new(Side::A, vec![1, 2, 3]),
        ]);
        assert!(r.is_err());
    }
}
