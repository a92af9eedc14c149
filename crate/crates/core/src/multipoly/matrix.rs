use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from its columns, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} in a matrix with {rows} rows",
                bad.len()
            )));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Submatrix on the given (0-based) columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for t in 0..self.cols {
                acc = acc.add_ref(&self.get(i, t).mul_ref(other.get(t, j)));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect())
    }

    pub fn scale_column(&mut self, j: usize, s: &T) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul_ref(s);
            self.set(i, j, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, s: &T) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul_ref(s);
            self.set(i, j, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Determinant by cofactor expansion along rows, memoized over the set of
    /// remaining columns. Works over any commutative ring, in particular for
    /// matrices of polynomials. `0x0` has determinant one.
    pub fn cofactor_determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        assert!(n < 64, "cofactor expansion limited to 63x63");
        let mut memo: HashMap<u64, T> = HashMap::new();
        let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        Ok(self.cofactor_minor(full, &mut memo))
    }

    /// Determinant of the bottom `|cols|` rows restricted to `cols`.
    fn cofactor_minor(&self, cols: u64, memo: &mut HashMap<u64, T>) -> T {
        let size = cols.count_ones() as usize;
        if size == 0 {
            return T::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let row = self.rows - size;
        let mut acc = T::zero();
        let mut position = 0usize;
        let mut rest = cols;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let entry = self.get(row, c);
            if !entry.is_zero() {
                let minor = self.cofactor_minor(cols & !(1u64 << c), memo);
                if !minor.is_zero() {
                    let prod = entry.mul_ref(&minor);
                    acc = if position % 2 == 0 {
                        acc.add_ref(&prod)
                    } else {
                        acc.sub_ref(&prod)
                    };
                }
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

/// Row-reduced echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Matrix<T> {
    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let v = m
                        .get(i, j)
                        .mul_ref(&pivot)
                        .sub_ref(&lead.mul_ref(m.get(k, j)))
                        .div_ref(&prev);
                    m.set(i, j, v);
                }
                m.set(i, k, T::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { d.neg_ref() } else { d })
    }

    pub fn echelon(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            m.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..self.cols {
                        let v = m.get(i, j).sub_ref(&f.mul_ref(m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{ v : M v = 0 }`, one vector per free column (that vector
    /// has a 1 in its free column and 0 in the other free columns).
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = reduced.get(r, f).neg_ref();
                }
                v
            })
            .collect()
    }

    /// Basis of `{ y : y^T M = 0 }`.
    pub fn left_nullspace(&self) -> Vec<Vec<T>> {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let e = aug.echelon();
        if n > 0 && (e.pivots.len() < n || e.pivots[n - 1] >= n) {
            return Err(Error::RankDeficient {
                expected: n,
                found: self.rank(),
            });
        }
        Ok(Self::from_fn(n, n, |i, j| e.reduced.get(i, n + j).clone()))
    }
}

/// Incrementally assembled square linear system `sum_i c_i x_i = rhs`.
///
/// Equations are reduced against the rows accepted so far; redundant ones are
/// dropped. Once `unknowns` independent equations are in, the solution is
/// unique and [`IncrementalSolver::solve`] returns it.
#[derive(Clone, Debug)]
pub struct IncrementalSolver<T> {
    unknowns: usize,
    /// Reduced rows (length `unknowns + 1`, last entry is the right-hand
    /// side) with their pivot column; each pivot entry is one.
    rows: Vec<(usize, Vec<T>)>,
    inconsistent: bool,
}

impl<T: Field> IncrementalSolver<T> {
    pub fn new(unknowns: usize) -> Self {
        IncrementalSolver {
            unknowns,
            rows: Vec::new(),
            inconsistent: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_determined(&self) -> bool {
        self.rows.len() == self.unknowns
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Adds `coeffs . x = rhs`; returns whether the rank grew.
    pub fn push(&mut self, coeffs: &[T], rhs: T) -> bool {
        assert_eq!(coeffs.len(), self.unknowns);
        let mut row: Vec<T> = coeffs.to_vec();
        row.push(rhs);
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        match (0..self.unknowns).find(|&c| !row[c].is_zero()) {
            Some(p) => {
                let inv = row[p].inv();
                for x in row.iter_mut() {
                    *x = x.mul_ref(&inv);
                }
                for (_, r) in self.rows.iter_mut() {
                    if !r[p].is_zero() {
                        let f = r[p].clone();
                        for (x, y) in r.iter_mut().zip(&row) {
                            *x = x.sub_ref(&f.mul_ref(y));
                        }
                    }
                }
                self.rows.push((p, row));
                true
            }
            None => {
                if !row[self.unknowns].is_zero() {
                    self.inconsistent = true;
                }
                false
            }
        }
    }

    /// The unique solution, once determined.
    pub fn solve(&self) -> Option<Vec<T>> {
        if !self.is_determined() || self.inconsistent {
            return None;
        }
        let mut x = vec![T::zero(); self.unknowns];
        for (p, r) in &self.rows {
            x[*p] = r[self.unknowns].clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn identity_and_repeated_rows() {
        assert_eq!(Matrix::<Rational>::identity(3).determinant().unwrap(), rat(1));
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(a.determinant().unwrap(), rat(0));
        assert_eq!(a.cofactor_determinant().unwrap(), rat(0));
    }

    #[test]
    fn empty_matrix_has_unit_determinant() {
        let e = Matrix::<Rational>::zeros(0, 0);
        assert_eq!(e.determinant().unwrap(), rat(1));
        assert_eq!(e.cofactor_determinant().unwrap(), rat(1));
    }

    #[test]
    fn non_square_is_rejected() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(
            a.determinant(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(a.cofactor_determinant().is_err());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let a = m(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        // 0*(0-1) - 1*(0-1) + 2*(3-0) = 7
        assert_eq!(a.determinant().unwrap(), rat(7));
        assert_eq!(a.cofactor_determinant().unwrap(), rat(7));
    }

    #[test]
    fn nullspace_of_block_matrix() {
        let a = m(&[&[1, 0, 2, 3], &[0, 1, 4, 5]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![rat(-2), rat(-4), rat(1), rat(0)]);
        for v in &ns {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn incremental_solver_skips_redundant_rows() {
        let mut s = IncrementalSolver::<Rational>::new(2);
        assert!(s.push(&[rat(1), rat(1)], rat(3)));
        assert!(!s.push(&[rat(2), rat(2)], rat(6)));
        assert!(!s.is_determined());
        assert!(s.push(&[rat(1), rat(-1)], rat(1)));
        assert_eq!(s.solve().unwrap(), vec![rat(2), rat(1)]);
    }

    #[test]
    fn generic_over_machine_rationals() {
        use num_rational::Ratio;
        let a: Matrix<Ratio<i64>> = Matrix::from_rows(&[
            vec![Ratio::new(1, 2), Ratio::from_integer(3)],
            vec![Ratio::from_integer(4), Ratio::new(-1, 3)],
        ])
        .unwrap();
        assert_eq!(a.determinant().unwrap(), Ratio::new(-1, 6) - Ratio::from_integer(12));
        assert_eq!(a.determinant().unwrap(), a.cofactor_determinant().unwrap());
    }
}
