//! Exact sparse multivariate polynomials, dense matrices, and determinants.
//!
//! Indeterminates are the entries `a_{ij}` / `b_{ij}` of two matrices
//! ([`VarId`]); a [`Polynomial`] keeps its terms in a sorted map so that
//! equality of polynomials is equality of term maps.

mod matrix;
mod poly;
pub mod rational;
mod text;

pub use matrix::{Echelon, IncrementalSolver, Matrix};
pub use poly::{Monomial, Polynomial, Side, VarId};

use crate::error::Result;
use crate::{ExactMatrix, PolyMatrix, Rational, SparsePolynomial};

/// Determinant of a rational matrix (fraction-free elimination).
pub fn det_exact(m: &ExactMatrix) -> Result<Rational> {
    m.determinant()
}

/// Determinant of a polynomial matrix (memoized cofactor expansion).
pub fn det_symbolic(m: &PolyMatrix) -> Result<SparsePolynomial> {
    m.cofactor_determinant()
}

/// Symbolic matrix whose `(i, j)` entry is the variable `side[i+1, cols[j]]`.
pub fn generic_matrix(side: Side, rows: usize, cols: &[usize]) -> PolyMatrix {
    Matrix::from_fn(rows, cols.len(), |i, j| {
        Polynomial::var(VarId::new(side, i + 1, cols[j]))
    })
}

/// Evaluates every entry of a polynomial matrix.
pub fn eval_matrix(
    m: &PolyMatrix,
    assignment: impl Fn(VarId) -> Option<Rational>,
) -> Result<ExactMatrix> {
    let entries = m
        .entries()
        .iter()
        .map(|p| p.eval(&assignment))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(m.rows(), m.cols(), entries)
}

/// Assignment reading `a_{ij}` from `a` and `b_{ij}` from `b` (1-based).
pub fn assignment_from<'a>(
    a: Option<&'a ExactMatrix>,
    b: Option<&'a ExactMatrix>,
) -> impl Fn(VarId) -> Option<Rational> + 'a {
    move |v: VarId| {
        let m = match v.side {
            Side::A => a?,
            Side::B => b?,
        };
        let (i, j) = (v.row as usize - 1, v.col as usize - 1);
        (i < m.rows() && j < m.cols()).then(|| m.get(i, j).clone())
    }
}
