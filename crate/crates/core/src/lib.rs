//! Exact computation of Segre determinants and their bracket expansions.
//!
//! The Segre matrix of point pairs `(A_c, B_c)` in `P^{k-1} x P^{l-1}` has the
//! flattened tensors `A_c ⊗ B_c` as columns; for `kl` pairs it is square and
//! its determinant is the Segre determinant. This crate computes it as a raw
//! polynomial, as a sum of `[I]`-brackets via block Laplace expansion, and
//! simultaneously in `[I]`- and `<J>`-brackets via straightening plus exact
//! coefficient solving, and applies it to epipolar geometry, Chow-Lam degrees
//! of torus orbits, and the Segre coefficient map.
//!
//! All arithmetic is exact. The polynomial and matrix containers are generic
//! over the scalar ring ([`scalar::Ring`], [`scalar::Field`]); the aliases
//! below fix the scalar to arbitrary-precision rationals.

pub mod bracket;
pub mod coeffvar;
pub mod error;
pub mod grassmann;
pub mod multipoly;
pub mod random;
pub mod scalar;
pub mod schubert;
pub mod segre;
pub mod vision;

pub use error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Dense matrix of exact rationals.
pub type ExactMatrix = multipoly::Matrix<Rational>;
/// Sparse polynomial over the rationals in the `a_{ij}`, `b_{ij}`.
pub type SparsePolynomial = multipoly::Polynomial<Rational>;
/// Dense matrix of polynomials.
pub type PolyMatrix = multipoly::Matrix<SparsePolynomial>;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` in lowest terms; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
