//! Scalar traits shared by the polynomial and matrix layers.
//!
//! Everything symbolic in this crate is computed over an exact ring. The
//! matrix and polynomial containers are generic over [`Ring`] (cofactor
//! determinants, products) or [`Field`] (elimination, ranks, kernels); the
//! rest of the crate fixes the scalar to [`crate::Rational`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact arithmetic; `0` and `1` come from
/// [`num_traits`].
///
/// Operations take references so that large elements (polynomials) are not
/// cloned on every product.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// A field whose division is exact.
pub trait Field: Ring {
    /// Exact quotient; the divisor must be nonzero.
    fn div_ref(&self, other: &Self) -> Self;
    fn from_i64(value: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }
}

macro_rules! impl_num_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn add_ref(&self, other: &Self) -> Self {
                self + other
            }
            fn sub_ref(&self, other: &Self) -> Self {
                self - other
            }
            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }
            fn neg_ref(&self) -> Self {
                -self
            }
        }
    };
}

impl_num_ring!(BigRational);
impl_num_ring!(Ratio<i64>);
impl_num_ring!(BigInt);
impl_num_ring!(i64);

impl Field for BigRational {
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

/// Machine-word rationals. Overflow panics, so this is only suitable for
/// small inputs; it exists mainly to exercise the generic code paths.
impl Field for Ratio<i64> {
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }
}

/// Sign of a nonzero scalar as `+1`/`-1`, or `0`.
pub fn signum(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
