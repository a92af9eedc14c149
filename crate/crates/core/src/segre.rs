//! Segre matrices and their determinants in three coordinate systems: raw
//! matrix entries, single brackets (block Laplace expansion), and standard
//! double brackets.
//!
//! For `A` of size `k x r` and `B` of size `l x r`, row `(i, j)` of the Segre
//! matrix sits at position `(i-1)*l + j` and column `c` holds
//! `a_{ic} * b_{jc}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::bracket::{
    enumerate_standard_multilinear, minor_oracle, sorting_sign, Bracket, BracketMonomial,
    BracketPolynomial, DoubleBracketPolynomial, Straightener,
};
use crate::error::{Error, Result};
use crate::multipoly::{generic_matrix, IncrementalSolver, Matrix, Monomial, Side, VarId};
use crate::random::{derive_seed, int_matrix, rng};
use crate::scalar::Ring;
use crate::{ExactMatrix, PolyMatrix, Rational, SparsePolynomial};

/// Seed used when a caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SegreShape {
    pub k: usize,
    pub l: usize,
    /// Number of point pairs.
    pub r: usize,
}

impl SegreShape {
    /// Square shape with `r = k * l`.
    pub fn new(k: usize, l: usize) -> Result<Self> {
        Self::with_points(k, l, k * l)
    }

    pub fn with_points(k: usize, l: usize, r: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidParameter(
                "k and l must be at least 1".into(),
            ));
        }
        Ok(SegreShape { k, l, r })
    }

    pub fn n(&self) -> usize {
        self.k * self.l
    }

    pub fn is_square(&self) -> bool {
        self.r == self.n()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.n(),
                cols: self.r,
            })
        }
    }

    /// Row position of `(i, j)` (both 0-based).
    pub fn row_of(&self, i: usize, j: usize) -> usize {
        i * self.l + j
    }
}

/// Column-wise Kronecker product of `a` and `b` under the fixed row order.
pub fn segre_matrix<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} columns, B has {}",
            a.cols(),
            b.cols()
        )));
    }
    let l = b.rows();
    Ok(Matrix::from_fn(a.rows() * l, a.cols(), |row, c| {
        a.get(row / l, c).mul_ref(b.get(row % l, c))
    }))
}

/// The Segre matrix of generic `A` and `B`.
pub fn segre_matrix_symbolic(shape: SegreShape) -> PolyMatrix {
    let cols: Vec<usize> = (1..=shape.r).collect();
    segre_matrix(
        &generic_matrix(Side::A, shape.k, &cols),
        &generic_matrix(Side::B, shape.l, &cols),
    )
    .expect("same column count")
}

pub fn segre_det(a: &ExactMatrix, b: &ExactMatrix) -> Result<Rational> {
    let m = segre_matrix(a, b)?;
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    m.determinant()
}

pub fn segre_det_symbolic(shape: SegreShape) -> Result<SparsePolynomial> {
    shape.require_square()?;
    segre_matrix_symbolic(shape).cofactor_determinant()
}

/// One ordered partition `(I_1, ..., I_l)` of the columns, with the sign of
/// the permutation listing `I_1, ..., I_l` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceTerm {
    /// `blocks[j]` is the sorted 1-based column set paired with B-row `j+1`.
    pub blocks: Vec<Vec<usize>>,
    pub column_sign: i8,
}

impl LaplaceTerm {
    /// For each column (0-based), the 0-based B-row it is paired with. This
    /// identifies the partition and the b-monomial `prod_c b_{row(c), c}`.
    pub fn b_key(&self, n: usize) -> Vec<u8> {
        let mut key = vec![0u8; n];
        for (j, block) in self.blocks.iter().enumerate() {
            for &c in block {
                key[c - 1] = j as u8;
            }
        }
        key
    }

    pub fn b_monomial(&self) -> Monomial {
        Monomial::from_factors(
            self.blocks
                .iter()
                .enumerate()
                .flat_map(|(j, block)| block.iter().map(move |&c| (VarId::b(j + 1, c), 1))),
        )
    }

    pub fn a_monomial(&self) -> BracketMonomial {
        BracketMonomial::new(
            self.blocks
                .iter()
                .map(|b| Bracket::new(Side::A, b.clone()))
                .collect(),
        )
        .expect("uniform brackets")
    }
}

/// The Segre determinant as `row_sign * sum column_sign * [I_1]...[I_l] *
/// prod_j prod_{c in I_j} b_{jc}`.
#[derive(Clone, Debug)]
pub struct BlockLaplace {
    pub shape: SegreShape,
    /// Sign of regrouping the rows by their B-index.
    pub row_sign: i8,
    pub terms: Vec<LaplaceTerm>,
}

impl BlockLaplace {
    pub fn to_polynomial(&self) -> SparsePolynomial {
        let mut cache: HashMap<Vec<usize>, SparsePolynomial> = HashMap::new();
        let mut out = SparsePolynomial::zero();
        for t in &self.terms {
            let mut p = SparsePolynomial::term(
                Rational::from_integer(i64::from(t.column_sign * self.row_sign).into()),
                t.b_monomial(),
            );
            for block in &t.blocks {
                let e = cache
                    .entry(block.clone())
                    .or_insert_with(|| Bracket::new(Side::A, block.clone()).expand());
                p = p.mul_ref(e);
            }
            out = out.add_ref(&p);
        }
        out
    }

    pub fn eval(&self, a: &ExactMatrix, b: &ExactMatrix) -> Rational {
        let mut minor = minor_oracle(a);
        let mut total = Rational::zero();
        for t in &self.terms {
            let mut v = Rational::from_integer(i64::from(t.column_sign).into());
            for (j, block) in t.blocks.iter().enumerate() {
                v *= minor(&Bracket::new(Side::A, block.clone()));
                for &c in block {
                    v *= b.get(j, c - 1);
                }
            }
            total += v;
        }
        total * Rational::from_integer(i64::from(self.row_sign).into())
    }
}

/// All ordered partitions of `1..=n` into `parts` blocks of size `size`.
fn ordered_partitions(n: usize, size: usize, parts: usize) -> Vec<Vec<Vec<usize>>> {
    fn choose(
        pool: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < size - cur.len() {
                break;
            }
            cur.push(pool[i]);
            choose(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
    fn rec(pool: Vec<usize>, size: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if pool.is_empty() {
            out.push(acc.clone());
            return;
        }
        let mut subsets = Vec::new();
        choose(&pool, size, 0, &mut Vec::new(), &mut subsets);
        for s in subsets {
            let rest: Vec<usize> = pool.iter().copied().filter(|x| !s.contains(x)).collect();
            acc.push(s);
            rec(rest, size, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if parts * size == n {
        rec((1..=n).collect(), size, &mut Vec::new(), &mut out);
    }
    out
}

pub fn block_laplace_dual(shape: SegreShape) -> Result<BlockLaplace> {
    shape.require_square()?;
    let (k, l) = (shape.k, shape.l);
    let regrouped: Vec<usize> = (0..l)
        .flat_map(|j| (0..k).map(move |i| shape.row_of(i, j)))
        .collect();
    let row_sign = sorting_sign(&regrouped);
    let terms = ordered_partitions(shape.n(), k, l)
        .into_iter()
        .map(|blocks| {
            let concat: Vec<usize> = blocks.iter().flatten().copied().collect();
            LaplaceTerm {
                column_sign: sorting_sign(&concat),
                blocks,
            }
        })
        .collect();
    Ok(BlockLaplace {
        shape,
        row_sign,
        terms,
    })
}

/// The Segre determinant in standard double brackets.
#[derive(Clone, Debug)]
pub struct DoubleExpansion {
    pub shape: SegreShape,
    /// Standard A-monomials times standard B-monomials; its expansion into
    /// matrix entries is `det_sign` times the Segre determinant.
    pub poly: DoubleBracketPolynomial,
    pub det_sign: i8,
}

impl DoubleExpansion {
    /// The B-side polynomial of a fixed configuration `A`.
    pub fn b_polynomial(&self, a: &ExactMatrix) -> BracketPolynomial {
        self.poly
            .eval_a(&mut minor_oracle(a))
            .scale(&Rational::from_integer(i64::from(self.det_sign).into()))
    }

    /// Evaluates the Segre determinant through the bracket form.
    pub fn eval_det(&self, a: &ExactMatrix, b: &ExactMatrix) -> Rational {
        let v = self.poly.eval(&mut minor_oracle(a), &mut minor_oracle(b));
        v * Rational::from_integer(i64::from(self.det_sign).into())
    }
}

type BKey = Vec<u8>;

/// Support of the expansion of `<J_1>...<J_k>` on b-keys, with signs: the
/// monomial `prod_c b_{row(c), c}` appears iff along every `J_t` the rows
/// form a permutation, and then with the product of those signs.
fn b_support(m: &BracketMonomial, n: usize, l: usize) -> HashMap<BKey, i8> {
    fn perms(l: usize) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..l {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u8>| {
                    (0..l as u8)
                        .filter(|x| !p.contains(x))
                        .map(|x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        out
    }
    let perm_list: Vec<(Vec<u8>, i8)> = perms(l)
        .into_iter()
        .map(|p| {
            let s = sorting_sign(&p);
            (p, s)
        })
        .collect();
    let mut acc: Vec<(BKey, i8)> = vec![(vec![0; n], 1)];
    for bracket in m.factors() {
        let mut next = Vec::with_capacity(acc.len() * perm_list.len());
        for (key, sign) in &acc {
            for (p, s) in &perm_list {
                let mut key = key.clone();
                for (pos, &c) in bracket.indices().iter().enumerate() {
                    key[c - 1] = p[pos];
                }
                next.push((key, sign * s));
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

fn signed(s: i8) -> Rational {
    Rational::from_integer(i64::from(s).into())
}

/// Solves `f = sum_i x_i * basis_i` on b-keys, sampling equations from the
/// support of `f` first, then verifies the solution on every key.
fn solve_b_coordinates(
    f: &BTreeMap<BKey, Rational>,
    supports: &[HashMap<BKey, i8>],
    all_keys: &[BKey],
    seed: u64,
) -> Result<Vec<Rational>> {
    let unknowns = supports.len();
    let mut rng = rng(seed);
    let mut order: Vec<&BKey> = f.keys().collect();
    order.shuffle(&mut rng);
    let mut rest: Vec<&BKey> = all_keys.iter().filter(|k| !f.contains_key(*k)).collect();
    rest.shuffle(&mut rng);
    order.extend(rest);
    let mut solver = IncrementalSolver::new(unknowns);
    for key in order {
        let coeffs: Vec<Rational> = supports
            .iter()
            .map(|s| s.get(key).map_or_else(Rational::zero, |&x| signed(x)))
            .collect();
        let rhs = f.get(key).cloned().unwrap_or_else(Rational::zero);
        solver.push(&coeffs, rhs);
        if solver.is_determined() {
            break;
        }
    }
    let x = solver.solve().ok_or(Error::SingularSystem(solver.rank()))?;
    let mut candidate: HashMap<&BKey, Rational> = HashMap::new();
    for (xi, s) in x.iter().zip(supports) {
        if xi.is_zero() {
            continue;
        }
        for (key, &sign) in s {
            *candidate.entry(key).or_insert_with(Rational::zero) += xi * signed(sign);
        }
    }
    candidate.retain(|_, v| !v.is_zero());
    let matches = candidate.len() == f.len()
        && f.iter().all(|(key, v)| candidate.get(key) == Some(v));
    if !matches {
        return Err(Error::SingularSystem(solver.rank()));
    }
    Ok(x)
}

/// Writes the Segre determinant in standard monomials on both sides.
///
/// The A side comes from the block Laplace expansion, straightened one
/// factor at a time. For each standard A-monomial its b-coefficient is then
/// resolved in the standard B-basis from sampled b-monomial coefficients and
/// checked against all of them. The `seed` only affects the sampling order.
pub fn double_expansion(shape: SegreShape, seed: u64) -> Result<DoubleExpansion> {
    let laplace = block_laplace_dual(shape)?;
    let (k, l, n) = (shape.k, shape.l, shape.n());

    let mut by_a: BTreeMap<BracketMonomial, Vec<usize>> = BTreeMap::new();
    for (idx, t) in laplace.terms.iter().enumerate() {
        by_a.entry(t.a_monomial()).or_default().push(idx);
    }
    let a_groups: Vec<(BracketMonomial, Vec<usize>)> = by_a.into_iter().collect();
    let straightened: Vec<BracketPolynomial> = a_groups
        .par_iter()
        .map_init(Straightener::new, |st, (m, _)| {
            let factors: Vec<BracketPolynomial> =
                m.factors().iter().cloned().map(BracketPolynomial::bracket).collect();
            st.straighten_product(&factors)
                .unwrap_or_else(|| BracketPolynomial::constant(Side::A, k, Rational::one()))
        })
        .collect();

    let mut f_by_t: BTreeMap<BracketMonomial, BTreeMap<BKey, Rational>> = BTreeMap::new();
    for ((_, idxs), s) in a_groups.iter().zip(&straightened) {
        for (t_mono, c) in s.terms() {
            let f = f_by_t.entry(t_mono.clone()).or_default();
            for &idx in idxs {
                let term = &laplace.terms[idx];
                let v = f.entry(term.b_key(n)).or_insert_with(Rational::zero);
                *v += c * signed(term.column_sign);
            }
        }
    }
    for f in f_by_t.values_mut() {
        f.retain(|_, v| !v.is_zero());
    }
    f_by_t.retain(|_, f| !f.is_empty());

    let basis = enumerate_standard_multilinear(Side::B, l, k);
    let supports: Vec<HashMap<BKey, i8>> = basis.iter().map(|m| b_support(m, n, l)).collect();
    let all_keys: Vec<BKey> = laplace.terms.iter().map(|t| t.b_key(n)).collect();

    let t_list: Vec<(&BracketMonomial, &BTreeMap<BKey, Rational>)> = f_by_t.iter().collect();
    let solutions: Vec<Vec<Rational>> = t_list
        .par_iter()
        .enumerate()
        .map(|(i, (_, f))| solve_b_coordinates(f, &supports, &all_keys, derive_seed(seed, i as u64)))
        .collect::<Result<_>>()?;

    let mut poly = DoubleBracketPolynomial::zero(k, l);
    for ((t_mono, _), x) in t_list.iter().zip(solutions) {
        for (b_mono, c) in basis.iter().zip(x) {
            poly.add_term((*t_mono).clone(), b_mono.clone(), c);
        }
    }

    let det_sign = global_sign(&poly, shape, seed)?;
    Ok(DoubleExpansion {
        shape,
        poly,
        det_sign,
    })
}

/// Compares the bracket form with the direct determinant on random integer
/// instances and returns the relating sign.
fn global_sign(poly: &DoubleBracketPolynomial, shape: SegreShape, seed: u64) -> Result<i8> {
    for attempt in 0..32 {
        let mut r = rng(derive_seed(seed ^ 0xD1CE, attempt));
        let a = int_matrix(&mut r, shape.k, shape.n(), 7);
        let b = int_matrix(&mut r, shape.l, shape.n(), 7);
        let direct = segre_det(&a, &b)?;
        if direct.is_zero() {
            continue;
        }
        let via = poly.eval(&mut minor_oracle(&a), &mut minor_oracle(&b));
        return if via == direct {
            Ok(1)
        } else if via == -direct {
            Ok(-1)
        } else {
            Err(Error::SingularSystem(0))
        };
    }
    Err(Error::SingularSystem(0))
}

/// A partner `B` (`l x n`) for which the Segre determinant vanishes: its rows
/// lie in `{ v : sum_c t_c v_c A_c = 0 }`, so the Segre columns satisfy
/// `sum_c t_c (A_c (x) B_c) = 0`.
pub fn dependent_partner(
    a: &ExactMatrix,
    t: &[Rational],
    l: usize,
    seed: u64,
) -> Result<ExactMatrix> {
    if t.len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} columns",
            t.len(),
            a.cols()
        )));
    }
    let mut scaled = a.clone();
    for (c, tc) in t.iter().enumerate() {
        scaled.scale_column(c, tc);
    }
    let kernel = scaled.nullspace();
    if kernel.is_empty() {
        return Err(Error::EmptyKernel);
    }
    let mut r = rng(seed);
    let rows: Vec<Vec<Rational>> = (0..l)
        .map(|_| {
            let weights: Vec<Rational> = (0..kernel.len())
                .map(|_| crate::random::small_int(&mut r, 5))
                .collect();
            (0..a.cols())
                .map(|c| {
                    weights
                        .iter()
                        .zip(&kernel)
                        .fold(Rational::zero(), |acc, (w, v)| acc + w * &v[c])
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::assignment_from;
    use crate::{rat, random};

    fn cols(rows: usize, data: &[&[i64]]) -> ExactMatrix {
        let columns: Vec<Vec<Rational>> = data.iter().map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
        Matrix::from_columns(rows, &columns).unwrap()
    }

    #[test]
    fn two_by_two_layout() {
        let m = segre_matrix_symbolic(SegreShape::new(2, 2).unwrap());
        let expected = ["a[1,1]*b[1,1]", "a[1,1]*b[2,1]", "a[2,1]*b[1,1]", "a[2,1]*b[2,1]"];
        for (row, e) in expected.iter().enumerate() {
            assert_eq!(m.get(row, 0).to_string(), *e);
        }
    }

    #[test]
    fn one_by_one() {
        let m = segre_matrix_symbolic(SegreShape::new(1, 1).unwrap());
        assert_eq!(m.get(0, 0).to_string(), "a[1,1]*b[1,1]");
    }

    #[test]
    fn column_mismatch() {
        let a = Matrix::<Rational>::zeros(2, 3);
        let b = Matrix::<Rational>::zeros(2, 4);
        assert!(matches!(segre_matrix(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn small_example_value() {
        let a = cols(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]);
        let b = cols(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 3]]);
        let d = segre_det(&a, &b).unwrap();
        assert!(d == rat(1) || d == rat(-1));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(ordered_partitions(4, 2, 2).len(), 6);
        assert_eq!(ordered_partitions(6, 2, 3).len(), 90);
        assert_eq!(ordered_partitions(9, 3, 3).len(), 1680);
    }

    #[test]
    fn laplace_matches_symbolic_small() {
        for (k, l) in [(1, 2), (2, 1), (2, 2), (2, 3), (3, 2)] {
            let shape = SegreShape::new(k, l).unwrap();
            let laplace = block_laplace_dual(shape).unwrap();
            assert_eq!(laplace.to_polynomial(), segre_det_symbolic(shape).unwrap(), "{k} {l}");
        }
    }

    #[test]
    fn laplace_evaluation_matches_direct() {
        let shape = SegreShape::new(3, 3).unwrap();
        let laplace = block_laplace_dual(shape).unwrap();
        let mut r = random::rng(5);
        let a = random::int_matrix(&mut r, 3, 9, 4);
        let b = random::int_matrix(&mut r, 3, 9, 4);
        assert_eq!(laplace.eval(&a, &b), segre_det(&a, &b).unwrap());
    }

    #[test]
    fn b_support_of_basis_element() {
        let basis = enumerate_standard_multilinear(Side::B, 2, 2);
        let s = b_support(&basis[0], 4, 2);
        assert_eq!(s.len(), 4);
        let expanded = basis[0].expand();
        for (key, sign) in &s {
            let mono = Monomial::from_factors(
                key.iter().enumerate().map(|(c, &j)| (VarId::b(j as usize + 1, c + 1), 1)),
            );
            assert_eq!(expanded.coefficient(&mono), signed(*sign));
        }
    }

    #[test]
    fn two_by_two_double_expansion() {
        let shape = SegreShape::new(2, 2).unwrap();
        let e = double_expansion(shape, 1).unwrap();
        assert_eq!(e.poly.len(), 2);
        assert!(e.poly.is_standard());
        let symbolic = segre_det_symbolic(shape).unwrap();
        let via = e.poly.expand_to_variables().scale(&signed(e.det_sign));
        assert_eq!(via, symbolic);
    }

    #[test]
    fn seeds_do_not_change_the_result() {
        let shape = SegreShape::new(2, 3).unwrap();
        let e1 = double_expansion(shape, 1).unwrap();
        let e2 = double_expansion(shape, 99).unwrap();
        assert_eq!(e1.poly, e2.poly);
        assert_eq!(e1.det_sign, e2.det_sign);
    }

    #[test]
    fn dependent_partner_kills_determinant() {
        let mut r = random::rng(3);
        let a = random::int_matrix(&mut r, 2, 4, 5);
        let t = random::nonzero_vector(&mut r, 4, 5);
        let b = dependent_partner(&a, &t, 2, 8).unwrap();
        assert!(segre_det(&a, &b).unwrap().is_zero());
        let assign = assignment_from(Some(&a), Some(&b));
        let symbolic = segre_det_symbolic(SegreShape::new(2, 2).unwrap()).unwrap();
        assert!(symbolic.eval(assign).unwrap().is_zero());
    }
}
