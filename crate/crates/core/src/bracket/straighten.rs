//! Straightening: rewriting bracket polynomials in the standard monomial
//! basis.
//!
//! A non-standard adjacent pair `[I][J]` with `I_s > J_s` is removed by the
//! shuffle relation on `S = (I_s..I_k, J_1..J_s)`: summing
//! `sgn(T1|T2) [I_1..I_{s-1} S_T1][S_T2 J_{s+1}..J_k]` over all ways to split
//! `S` into a block of size `k-s+1` and one of size `s` gives zero. The split
//! that reproduces `[I][J]` has sign `+1`, so `[I][J]` equals minus the
//! other terms. Every other term replaces `I` by a bracket that has more than
//! `s-1` indices below `I_s`, hence is lexicographically smaller than both
//! removed factors, so the sorted factor sequence strictly decreases and
//! processing a work list from its largest element terminates.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{sorting_sign, Bracket, BracketMonomial, BracketPolynomial, DoubleBracketPolynomial};
use crate::Rational;

/// Position lists of all `size`-subsets of `0..len` in lexicographic order.
fn subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, len, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, size, &mut Vec::new(), &mut out);
    out
}

/// One application of the shuffle relation at the first violation.
fn exchange(m: &BracketMonomial, t: usize, s: usize) -> Vec<(BracketMonomial, Rational)> {
    let factors = m.factors();
    let side = factors[t].side();
    let i = factors[t].indices();
    let j = factors[t + 1].indices();
    let k = i.len();
    let mut seq: Vec<usize> = i[s..].to_vec();
    seq.extend_from_slice(&j[..=s]);
    let first_len = k - s;
    let mut out = Vec::new();
    for t1 in subsets(k + 1, first_len) {
        if t1.iter().enumerate().all(|(p, &x)| p == x) {
            continue;
        }
        let t2: Vec<usize> = (0..=k).filter(|x| !t1.contains(x)).collect();
        let perm: Vec<usize> = t1.iter().chain(&t2).copied().collect();
        let shuffle_sign = sorting_sign(&perm);
        let mut new_i = i[..s].to_vec();
        new_i.extend(t1.iter().map(|&p| seq[p]));
        let mut new_j: Vec<usize> = t2.iter().map(|&p| seq[p]).collect();
        new_j.extend_from_slice(&j[s + 1..]);
        let Some((bi, si)) = Bracket::normalize_unchecked(side, &new_i) else {
            continue;
        };
        let Some((bj, sj)) = Bracket::normalize_unchecked(side, &new_j) else {
            continue;
        };
        let mut new_factors: Vec<Bracket> = Vec::with_capacity(factors.len());
        new_factors.extend_from_slice(&factors[..t]);
        new_factors.push(bi);
        new_factors.push(bj);
        new_factors.extend_from_slice(&factors[t + 2..]);
        let sign = -(shuffle_sign * si * sj);
        let monomial = BracketMonomial::new(new_factors).expect("same side and size");
        out.push((monomial, Rational::from_integer(i64::from(sign).into())));
    }
    out
}

/// Straightening with a memo table of already straightened monomials.
#[derive(Default)]
pub struct Straightener {
    cache: HashMap<BracketMonomial, BracketPolynomial>,
}

impl Straightener {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized monomials.
    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    pub fn straighten_monomial(&mut self, m: &BracketMonomial) -> BracketPolynomial {
        if let Some(p) = self.cache.get(m) {
            return p.clone();
        }
        let side = m.side().unwrap_or(crate::multipoly::Side::A);
        let size = m.bracket_size().unwrap_or(0);
        let mut result = BracketPolynomial::zero(side, size);
        let mut pending: BTreeMap<BracketMonomial, Rational> = BTreeMap::new();
        pending.insert(m.clone(), Rational::from_integer(1.into()));
        while let Some((cur, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match cur.first_violation() {
                None => result.add_term(cur, c),
                Some((t, s)) => {
                    if let Some(done) = self.cache.get(&cur) {
                        for (dm, dc) in done.terms() {
                            result.add_term(dm.clone(), dc * &c);
                        }
                        continue;
                    }
                    for (nm, nc) in exchange(&cur, t, s) {
                        *pending.entry(nm).or_insert_with(Rational::zero) += nc * &c;
                    }
                }
            }
        }
        self.cache.insert(m.clone(), result.clone());
        result
    }

    pub fn straighten(&mut self, p: &BracketPolynomial) -> BracketPolynomial {
        let mut out = BracketPolynomial::zero(p.side(), p.size());
        for (m, c) in p.terms() {
            if m.is_standard() {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            for (sm, sc) in self.straighten_monomial(m).terms() {
                out.add_term(sm.clone(), sc * c);
            }
        }
        out
    }

    /// Product of the factors, straightened after every multiplication so
    /// intermediate results stay in the standard basis.
    pub fn straighten_product(&mut self, factors: &[BracketPolynomial]) -> Option<BracketPolynomial> {
        let (first, rest) = factors.split_first()?;
        let mut acc = self.straighten(first);
        for f in rest {
            acc = self.straighten(&acc.mul(f));
        }
        Some(acc)
    }
}

/// Straightens a bracket polynomial into standard monomials.
pub fn straighten(p: &BracketPolynomial) -> BracketPolynomial {
    Straightener::new().straighten(p)
}

/// Straightens both sides of a double bracket polynomial independently.
pub fn straighten_double(p: &DoubleBracketPolynomial) -> DoubleBracketPolynomial {
    let mut sa = Straightener::new();
    let mut sb = Straightener::new();
    let mut out = DoubleBracketPolynomial::zero(p.a_size(), p.b_size());
    for ((a, b), c) in p.terms() {
        let pa = sa.straighten_monomial(a);
        let pb = sb.straighten_monomial(b);
        for (ma, ca) in pa.terms() {
            for (mb, cb) in pb.terms() {
                out.add_term(ma.clone(), mb.clone(), c * ca * cb);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::parse_terms;
    use crate::multipoly::Side;
    use crate::rat;

    fn poly(src: &str, size: usize, n: usize) -> BracketPolynomial {
        BracketPolynomial::from_raw_terms(Side::A, size, n, &parse_terms(src).unwrap()).unwrap()
    }

    #[test]
    fn classic_quadric() {
        let s = straighten(&poly("[14][23]", 2, 4));
        assert_eq!(s, poly("[13][24] - [12][34]", 2, 4));
    }

    #[test]
    fn standard_input_is_fixed() {
        let p = poly("2[13][24] - [12][12]", 2, 4);
        assert_eq!(straighten(&p), p);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(3, 1), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn three_by_three_results_are_standard_and_equal() {
        let p = poly("[156][234] + 3[246][135][123] - [456][123]", 3, 6);
        let s = straighten(&p);
        assert!(s.is_standard());
        assert_eq!(s.expand_to_variables(), p.expand_to_variables());
    }

    #[test]
    fn product_straightening_matches_plain() {
        let a = poly("[14][23]", 2, 5);
        let b = poly("[25][13] + [15]", 2, 5);
        let mut st = Straightener::new();
        let incremental = st.straighten_product(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(incremental, straighten(&a.mul(&b)));
        assert!(st.cached() > 0);
        assert_eq!(incremental.coefficient(&BracketMonomial::one()), rat(0));
    }
}
