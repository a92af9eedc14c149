use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Which point configuration an indeterminate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Entries `a_{ij}` of the `k x n` matrix; brackets render as `[I]`.
    A,
    /// Entries `b_{ij}` of the `l x n` matrix; brackets render as `<J>`.
    B,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::A => 'a',
            Side::B => 'b',
        }
    }
}

/// One indeterminate `a_{row,col}` or `b_{row,col}` (1-based).
///
/// The derived order (side, then row, then col) is the variable order used
/// for canonical monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub side: Side,
    pub row: u16,
    pub col: u16,
}

impl VarId {
    pub fn new(side: Side, row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "variable indices are 1-based");
        VarId {
            side,
            row: row as u16,
            col: col as u16,
        }
    }

    pub fn a(row: usize, col: usize) -> Self {
        Self::new(Side::A, row, col)
    }

    pub fn b(row: usize, col: usize) -> Self {
        Self::new(Side::B, row, col)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.side.letter(), self.row, self.col)
    }
}

/// A power product: `(variable, exponent)` pairs sorted by variable, all
/// exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary factors, merging repeats and dropping
    /// zero exponents.
    pub fn from_factors(factors: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, side: Side) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.side == side)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial in canonical form: no zero coefficients,
/// terms keyed by canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Self::zero();
        for (mm, x) in &self.terms {
            out.add_term(mm.mul(m), &x.mul_ref(c));
        }
        out
    }

    /// Evaluates at an assignment; every occurring variable must be covered.
    pub fn eval(&self, assignment: impl Fn(VarId) -> Option<C>) -> Result<C> {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in m.factors() {
                let x = assignment(v).ok_or(Error::MissingVariable(v))?;
                for _ in 0..e {
                    value = value.mul_ref(&x);
                }
            }
            total = total.add_ref(&value);
        }
        Ok(total)
    }

    /// Substitutes values for the variables `assignment` covers and keeps the
    /// rest symbolic.
    pub fn eval_partial(&self, assignment: impl Fn(VarId) -> Option<C>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.factors() {
                match assignment(v) {
                    Some(x) => {
                        for _ in 0..e {
                            value = value.mul_ref(&x);
                        }
                    }
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), &value);
        }
        out
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl<C: Ring> Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for Polynomial<C> {
    fn one() -> Self {
        Polynomial::constant(C::one())
    }
}

impl<C: Ring> Ring for Polynomial<C> {
    fn add_ref(&self, other: &Self) -> Self {
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &c.neg_ref());
        }
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &ca.mul_ref(cb));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<C: Ring> std::ops::$trait for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Self) -> Self {
                Ring::$inner(&self, &rhs)
            }
        }
        impl<'a, C: Ring> std::ops::$trait<&'a Polynomial<C>> for &'a Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
                Ring::$inner(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<C: Ring> std::ops::Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}
