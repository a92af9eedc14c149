//! Partitions in a box, semistandard tableau counts, and Klyachko's formula
//! for the Schubert coefficients of the torus orbit closure of a generic
//! point of `Gr(k, n)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Weakly decreasing parts, trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "partition parts {parts:?} are not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    pub fn fits(&self, shape: BoxShape) -> bool {
        self.len() <= shape.rows && self.part(0) <= shape.cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxShape {
    pub rows: usize,
    pub cols: usize,
}

impl BoxShape {
    /// The `k x (n-k)` box of `Gr(k, n)`.
    pub fn grassmannian(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!("need 0 < k < n, got k={k}, n={n}")));
        }
        Ok(BoxShape { rows: k, cols: n - k })
    }
}

fn check_fit(lambda: &Partition, shape: BoxShape) -> Result<()> {
    if lambda.fits(shape) {
        Ok(())
    } else {
        Err(Error::PartitionDoesNotFit {
            partition: lambda.to_string(),
            rows: shape.rows,
            cols: shape.cols,
        })
    }
}

/// The complement of `lambda` in the box, rotated by 180 degrees.
pub fn box_complement(lambda: &Partition, shape: BoxShape) -> Result<Partition> {
    check_fit(lambda, shape)?;
    let parts = (0..shape.rows)
        .map(|i| shape.cols - lambda.part(shape.rows - 1 - i))
        .collect();
    Partition::new(parts)
}

/// Increasing sequences of length `len` with entries in `1..=m`.
fn increasing_sequences(len: usize, m: usize) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for pos in 0..len {
        let mut next = Vec::new();
        for s in out {
            let lo = s.last().map_or(1, |&x| x as usize + 1);
            let hi = m.saturating_sub(len - pos - 1);
            for x in lo..=hi {
                let mut t = s.clone();
                t.push(x as u16);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Number of semistandard tableaux of shape `lambda` with entries in
/// `1..=m`, counted column by column: each column is strictly increasing
/// and dominates the column to its left entrywise.
pub fn ssyt_count(lambda: &Partition, m: usize) -> BigUint {
    if lambda.is_empty() {
        return BigUint::one();
    }
    if lambda.len() > m {
        return BigUint::zero();
    }
    let columns = lambda.conjugate();
    let mut candidates: HashMap<usize, Vec<Vec<u16>>> = HashMap::new();
    let mut states: HashMap<Vec<u16>, BigUint> = HashMap::new();
    for (j, &height) in columns.parts().iter().enumerate() {
        let cands = candidates
            .entry(height)
            .or_insert_with(|| increasing_sequences(height, m));
        let mut next: HashMap<Vec<u16>, BigUint> = HashMap::new();
        if j == 0 {
            for c in cands.iter() {
                next.insert(c.clone(), BigUint::one());
            }
        } else {
            for (prev, count) in &states {
                for c in cands.iter() {
                    if c.iter().zip(prev).all(|(x, y)| x >= y) {
                        *next.entry(c.clone()).or_insert_with(BigUint::zero) += count;
                    }
                }
            }
        }
        states = next;
    }
    states.values().sum()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `sum_{i=0}^{k} (-1)^i C(n, i) #SSYT(lambda^c, k - i)`, with `lambda^c` the
/// complement in the `k x (n-k)` box.
pub fn klyachko_delta(lambda: &Partition, k: usize, n: usize) -> Result<BigInt> {
    let shape = BoxShape::grassmannian(k, n)?;
    let comp = box_complement(lambda, shape)?;
    let mut total = BigInt::zero();
    for i in 0..=k {
        let term = BigInt::from(binomial(n, i) * ssyt_count(&comp, k - i));
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `(n-r+1, n-r, ..., n-r)` with `k` parts.
pub fn chow_lam_partition(k: usize, n: usize, r: usize) -> Result<Partition> {
    if k == 0 || r < k || r > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= r <= n, got k={k}, n={n}, r={r}"
        )));
    }
    let mut parts = vec![n - r; k];
    parts[0] += 1;
    Partition::new(parts)
}

/// Chow-Lam degree of the uniform matroid: `delta_alpha` for the partition
/// of [`chow_lam_partition`].
pub fn chow_lam_degree_uniform(k: usize, n: usize, r: usize) -> Result<BigInt> {
    let alpha = chow_lam_partition(k, n, r)?;
    klyachko_delta(&alpha, k, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Hook-content formula for the number of SSYT with entries in `1..=m`.
    fn hook_content(lambda: &Partition, m: usize) -> BigUint {
        let conj = lambda.conjugate();
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (i, &row) in lambda.parts().iter().enumerate() {
            for j in 0..row {
                let content = m as i64 + j as i64 - i as i64;
                if content <= 0 {
                    return BigUint::zero();
                }
                num *= BigUint::from(content as u64);
                let hook = (row - j - 1) + (conj.part(j) - i - 1) + 1;
                den *= BigUint::from(hook);
            }
        }
        num / den
    }

    #[test]
    fn complements() {
        let b22 = BoxShape { rows: 2, cols: 2 };
        assert_eq!(box_complement(&Partition::empty(), b22).unwrap(), p(&[2, 2]));
        let b24 = BoxShape { rows: 2, cols: 4 };
        assert_eq!(box_complement(&p(&[2, 1]), b24).unwrap(), p(&[3, 2]));
        assert!(box_complement(&p(&[5]), b24).is_err());
        assert!(box_complement(&p(&[1, 1, 1]), b24).is_err());
    }

    #[test]
    fn alpha_complement() {
        for (k, n, r) in [(2usize, 6usize, 5usize), (3, 9, 6), (3, 9, 7), (2, 8, 6)] {
            let alpha = chow_lam_partition(k, n, r).unwrap();
            let comp = box_complement(&alpha, BoxShape::grassmannian(k, n).unwrap()).unwrap();
            let mut expected = vec![r - k; k];
            expected[k - 1] -= 1;
            assert_eq!(comp, p(&expected));
        }
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(ssyt_count(&Partition::empty(), 0), BigUint::one());
        assert_eq!(ssyt_count(&p(&[1]), 7), BigUint::from(7u32));
        assert_eq!(ssyt_count(&p(&[3, 2]), 2), BigUint::from(2u32));
        assert_eq!(ssyt_count(&p(&[1, 1, 1]), 2), BigUint::zero());
        for shape in [vec![2, 1], vec![3, 3, 1], vec![4, 2, 2, 1], vec![2, 2]] {
            let l = p(&shape);
            for m in 0..6 {
                assert_eq!(ssyt_count(&l, m), hook_content(&l, m), "{l} m={m}");
            }
        }
    }

    #[test]
    fn klyachko_values() {
        assert_eq!(klyachko_delta(&p(&[2, 1]), 2, 6).unwrap(), BigInt::from(2));
        assert_eq!(klyachko_delta(&p(&[4, 3, 3]), 3, 9).unwrap(), BigInt::from(3));
        assert_eq!(klyachko_delta(&p(&[1]), 2, 4).unwrap(), BigInt::from(2));
        assert_eq!(chow_lam_degree_uniform(2, 4, 4).unwrap(), BigInt::from(2));
        assert_eq!(chow_lam_degree_uniform(2, 6, 5).unwrap(), BigInt::from(2));
        assert_eq!(chow_lam_degree_uniform(3, 9, 6).unwrap(), BigInt::from(3));
    }

    #[test]
    fn parameter_errors() {
        assert!(chow_lam_degree_uniform(3, 9, 2).is_err());
        assert!(chow_lam_degree_uniform(2, 4, 5).is_err());
        assert!(klyachko_delta(&p(&[1]), 0, 4).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[2, 0, 0]).parts(), &[2]);
    }
}
