//! Plücker coordinates of point configurations, Gale duality, matroids and
//! torus-orbit normal forms.
//!
//! A `k x n` matrix represents a point of `Gr(k, n)` by its row span; its
//! maximal minors are the dual coordinates `q_I`. The primal coordinates are
//! `p_I = (-1)^{eps(I)} q_{[n] \ I}` with `eps(I) = sum(I) - |I|(|I|+1)/2`;
//! they are the minors of a kernel representative up to a global factor.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::bracket::sorting_sign;
use crate::error::{Error, Result};
use crate::multipoly::Matrix;
use crate::{ExactMatrix, Rational};

/// All `size`-subsets of `1..=n`, lexicographic.
pub fn k_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n + 1 - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        rec(1, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// `[n] \ set` in increasing order.
pub fn complement(set: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|i| !set.contains(i)).collect()
}

/// `sum(I) - (1 + ... + |I|)`.
pub fn epsilon(set: &[usize]) -> usize {
    let m = set.len();
    set.iter().sum::<usize>() - m * (m + 1) / 2
}

/// A `k x n` matrix read as `n` points (its columns) in `P^{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    matrix: ExactMatrix,
}

impl PointConfiguration {
    pub fn new(matrix: ExactMatrix) -> Self {
        PointConfiguration { matrix }
    }

    /// Requires full row rank.
    pub fn checked(matrix: ExactMatrix) -> Result<Self> {
        let rank = matrix.rank();
        if rank != matrix.rows() {
            return Err(Error::RankDeficient {
                expected: matrix.rows(),
                found: rank,
            });
        }
        Ok(PointConfiguration { matrix })
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }

    /// Minor on the given 1-based columns, in the given order.
    pub fn minor(&self, cols: &[usize]) -> Rational {
        let idx: Vec<usize> = cols.iter().map(|c| c - 1).collect();
        self.matrix
            .select_columns(&idx)
            .determinant()
            .expect("square selection")
    }

    fn require_full_rank(&self) -> Result<()> {
        let rank = self.matrix.rank();
        if rank == self.k() {
            Ok(())
        } else {
            Err(Error::RankDeficient {
                expected: self.k(),
                found: rank,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Dual,
    Primal,
}

/// Coordinates indexed by increasing `k`-subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    pub k: usize,
    pub n: usize,
    pub coords: BTreeMap<Vec<usize>, Rational>,
    pub flavor: Flavor,
}

impl PlueckerVector {
    pub fn get(&self, set: &[usize]) -> Rational {
        self.coords.get(set).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coordinate of an arbitrary index list, alternating in its order.
    pub fn get_signed(&self, raw: &[usize]) -> Rational {
        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Rational::zero();
        }
        let v = self.get(&sorted);
        if sorting_sign(raw) < 0 {
            -v
        } else {
            v
        }
    }

    /// Values in lexicographic subset order.
    pub fn values(&self) -> Vec<Rational> {
        self.coords.values().cloned().collect()
    }

    /// Checks every three-term relation
    /// `p_{Sab} p_{Scd} - p_{Sac} p_{Sbd} + p_{Sad} p_{Sbc} = 0`.
    pub fn satisfies_three_term_relations(&self) -> bool {
        if self.k < 2 {
            return true;
        }
        for s in k_subsets(self.n, self.k - 2) {
            let rest = complement(&s, self.n);
            for quad in k_subsets(rest.len(), 4) {
                let [a, b, c, d] = [0, 1, 2, 3].map(|i| rest[quad[i] - 1]);
                let with = |x: usize, y: usize| {
                    let mut v = s.clone();
                    v.push(x);
                    v.push(y);
                    self.get_signed(&v)
                };
                let rel = with(a, b) * with(c, d) - with(a, c) * with(b, d) + with(a, d) * with(b, c);
                if !rel.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

pub fn dual_pluecker(a: &PointConfiguration) -> Result<PlueckerVector> {
    a.require_full_rank()?;
    let coords = k_subsets(a.n(), a.k())
        .into_iter()
        .map(|set| {
            let v = a.minor(&set);
            (set, v)
        })
        .collect();
    Ok(PlueckerVector {
        k: a.k(),
        n: a.n(),
        coords,
        flavor: Flavor::Dual,
    })
}

/// `p_I = (-1)^{eps(I)} q_{[n] \ I}`. Applied to a primal vector it returns
/// the dual one up to the global sign `(-1)^{k(n-k)}`.
pub fn primal_from_dual(q: &PlueckerVector) -> PlueckerVector {
    let size = q.n - q.k;
    let coords = k_subsets(q.n, size)
        .into_iter()
        .map(|set| {
            let v = q.get(&complement(&set, q.n));
            let v = if epsilon(&set) % 2 == 1 { -v } else { v };
            (set, v)
        })
        .collect();
    PlueckerVector {
        k: size,
        n: q.n,
        coords,
        flavor: match q.flavor {
            Flavor::Dual => Flavor::Primal,
            Flavor::Primal => Flavor::Dual,
        },
    }
}

/// An `(n-k) x n` matrix whose rows span `{ v : A v = 0 }`.
pub fn kernel_matrix(a: &PointConfiguration) -> Result<PointConfiguration> {
    a.require_full_rank()?;
    let rows = a.matrix.nullspace();
    if rows.is_empty() {
        return Ok(PointConfiguration::new(Matrix::zeros(0, a.n())));
    }
    Ok(PointConfiguration::new(Matrix::from_rows(&rows)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    pub k: usize,
    pub n: usize,
    pub bases: BTreeSet<Vec<usize>>,
}

impl Matroid {
    pub fn is_basis(&self, set: &[usize]) -> bool {
        self.bases.contains(set)
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() == k_subsets(self.n, self.k).len()
    }
}

pub fn matroid_of(a: &PointConfiguration) -> Matroid {
    let bases = k_subsets(a.n(), a.k())
        .into_iter()
        .filter(|set| !a.minor(set).is_zero())
        .collect();
    Matroid {
        k: a.k(),
        n: a.n(),
        bases,
    }
}

pub fn is_uniform(a: &PointConfiguration) -> bool {
    k_subsets(a.n(), a.k())
        .iter()
        .all(|set| !a.minor(set).is_zero())
}

/// Canonical representative of the orbit of `A` under row operations and
/// column scaling: the first `k` columns become the identity, row 1 is all
/// ones beyond them, and column `k+1` is all ones.
pub fn torus_normal_form(a: &PointConfiguration) -> Result<ExactMatrix> {
    let (k, n) = (a.k(), a.n());
    if k == 0 || n < k + 2 {
        return Err(Error::InvalidParameter(format!(
            "torus normal form needs 1 <= k and n >= k + 2, got k={k}, n={n}"
        )));
    }
    if !is_uniform(a) {
        return Err(Error::NotUniform);
    }
    let frame: Vec<usize> = (0..k).collect();
    let inv = a.matrix.select_columns(&frame).inverse()?;
    let mut m = inv.mul(&a.matrix)?;
    for c in k..n {
        let s = m.get(0, c).clone();
        m.scale_column(c, &(Rational::one() / s));
    }
    for i in 1..k {
        let s = m.get(i, k).clone();
        m.scale_row(i, &(Rational::one() / &s));
        m.scale_column(i, &s);
    }
    Ok(m)
}

pub fn torus_orbit_equivalent(a: &PointConfiguration, b: &PointConfiguration) -> Result<bool> {
    if a.k() != b.k() || a.n() != b.n() {
        return Ok(false);
    }
    Ok(torus_normal_form(a)? == torus_normal_form(b)?)
}

/// `lambda` with `v = lambda * u`, if both are nonzero and proportional.
/// Proportionality is tested by the cross products `u_i v_j = u_j v_i`.
pub fn proportionality_factor(u: &[Rational], v: &[Rational]) -> Option<Rational> {
    if u.len() != v.len() {
        return None;
    }
    let pivot = u.iter().position(|x| !x.is_zero())?;
    if v[pivot].is_zero() {
        return None;
    }
    let consistent = u
        .iter()
        .zip(v)
        .all(|(ui, vi)| ui * &v[pivot] == &u[pivot] * vi);
    consistent.then(|| &v[pivot] / &u[pivot])
}

pub fn projectively_equal(u: &[Rational], v: &[Rational]) -> bool {
    proportionality_factor(u, v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::rat;

    fn cols(rows: usize, data: &[&[i64]]) -> PointConfiguration {
        let columns: Vec<Vec<Rational>> =
            data.iter().map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
        PointConfiguration::new(Matrix::from_columns(rows, &columns).unwrap())
    }

    #[test]
    fn small_example_minors() {
        let a = cols(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]);
        let q = dual_pluecker(&a).unwrap();
        let got: Vec<i64> = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]
            .iter()
            .map(|s| q.get(s).to_integer().try_into().unwrap())
            .collect();
        // [24] = det[[0, 1], [1, 2]] = -1
        assert_eq!(got, vec![1, 1, 2, -1, -1, 1]);
        assert!(q.satisfies_three_term_relations());
    }

    #[test]
    fn gr35_signed_complements() {
        let mut r = random::rng(11);
        let a = PointConfiguration::new(random::int_matrix(&mut r, 3, 5, 6));
        let q = dual_pluecker(&a).unwrap();
        let p = primal_from_dual(&q);
        assert_eq!(p.get(&[1, 2]), q.get(&[3, 4, 5]));
        assert_eq!(p.get(&[1, 3]), -q.get(&[2, 4, 5]));
        assert_eq!(p.get(&[1, 5]), -q.get(&[2, 3, 4]));
        assert_eq!(p.get(&[3, 4]), q.get(&[1, 2, 5]));
    }

    #[test]
    fn double_complement_sign() {
        let mut r = random::rng(12);
        for (k, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
            let a = PointConfiguration::new(random::int_matrix(&mut r, k, n, 6));
            let q = dual_pluecker(&a).unwrap();
            let back = primal_from_dual(&primal_from_dual(&q));
            let sign = if (k * (n - k)) % 2 == 1 { -rat(1) } else { rat(1) };
            for (set, v) in &q.coords {
                assert_eq!(back.get(set), v * &sign);
            }
        }
    }

    #[test]
    fn kernel_of_identity_block() {
        let a = cols(2, &[&[1, 0], &[0, 1], &[3, 5], &[-2, 7]]);
        let b = kernel_matrix(&a).unwrap();
        let expected = Matrix::from_rows(&[
            vec![rat(-3), rat(-5), rat(1), rat(0)],
            vec![rat(2), rat(-7), rat(0), rat(1)],
        ])
        .unwrap();
        assert_eq!(b.matrix(), &expected);
        assert!(b.matrix().mul(&a.matrix().transpose()).unwrap().is_zero());
    }

    #[test]
    fn epsilon_sums_for_gr36() {
        for set in k_subsets(6, 3) {
            assert_eq!(epsilon(&set) + epsilon(&complement(&set, 6)), 9);
        }
    }

    #[test]
    fn parallel_columns_break_uniformity() {
        let a = cols(2, &[&[1, 2], &[2, 4], &[1, 1], &[0, 1]]);
        let m = matroid_of(&a);
        assert!(!m.is_basis(&[1, 2]));
        assert!(m.is_basis(&[1, 3]));
        assert!(!is_uniform(&a));
        assert!(matches!(torus_normal_form(&a), Err(Error::NotUniform)));
    }

    #[test]
    fn normal_form_shape() {
        let mut r = random::rng(13);
        let a = PointConfiguration::new(random::int_matrix(&mut r, 3, 6, 9));
        assert!(is_uniform(&a));
        let nf = torus_normal_form(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(nf.get(i, j), &if i == j { rat(1) } else { rat(0) });
            }
            assert_eq!(nf.get(i, 3), &rat(1));
        }
        for c in 3..6 {
            assert_eq!(nf.get(0, c), &rat(1));
        }
    }

    #[test]
    fn proportionality() {
        let u = [rat(1), rat(0), rat(-2)];
        let v = [rat(-3), rat(0), rat(6)];
        assert_eq!(proportionality_factor(&u, &v), Some(rat(-3)));
        assert!(!projectively_equal(&u, &[rat(1), rat(1), rat(-2)]));
        assert!(!projectively_equal(&vec![rat(0); 3], &vec![rat(0); 3]));
    }
}
