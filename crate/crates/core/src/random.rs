//! Seeded generators for small-height rational test data.
//!
//! Every randomized routine in the crate takes an explicit seed and draws
//! from a ChaCha stream, so identical seeds reproduce identical runs on every
//! platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multipoly::Matrix;
use crate::{rat, ratio, ExactMatrix, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for sub-task `index` of a seeded run.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Integer in `[-bound, bound]`.
pub fn small_int(rng: &mut SeededRng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

/// Nonzero integer in `[-bound, bound]`.
pub fn small_nonzero(rng: &mut SeededRng, bound: i64) -> Rational {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return rat(x);
        }
    }
}

/// Rational `p/q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn small_rational(rng: &mut SeededRng, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    ratio(p, q)
}

pub fn int_matrix(rng: &mut SeededRng, rows: usize, cols: usize, bound: i64) -> ExactMatrix {
    Matrix::from_fn(rows, cols, |_, _| small_int(rng, bound))
}

pub fn rational_matrix(rng: &mut SeededRng, rows: usize, cols: usize, bound: i64) -> ExactMatrix {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng, bound))
}

pub fn nonzero_vector(rng: &mut SeededRng, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| small_nonzero(rng, bound)).collect()
}
