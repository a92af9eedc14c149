//! Standard monomials that use every index of `1..=k*d` exactly once.
//!
//! These are the standard Young tableaux of the `d x k` rectangle, read row
//! by row as brackets.

use num_bigint::BigUint;
use num_traits::One;

use super::{Bracket, BracketMonomial};
use crate::multipoly::Side;

/// All standard multilinear monomials `[I_1]...[I_d]` with `|I_t| = size`
/// over `n = size * degree` indices, in increasing monomial order.
pub fn enumerate_standard_multilinear(side: Side, size: usize, degree: usize) -> Vec<BracketMonomial> {
    fn place(
        next: usize,
        n: usize,
        size: usize,
        rows: &mut Vec<Vec<usize>>,
        side: Side,
        out: &mut Vec<BracketMonomial>,
    ) {
        if next > n {
            let factors = rows.iter().map(|r| Bracket::new(side, r.clone())).collect();
            out.push(BracketMonomial::new(factors).expect("uniform"));
            return;
        }
        for t in 0..rows.len() {
            let p = rows[t].len();
            if p < size && (t == 0 || rows[t - 1].len() > p) {
                rows[t].push(next);
                place(next + 1, n, size, rows, side, out);
                rows[t].pop();
            }
        }
    }
    let mut out = Vec::new();
    if size == 0 || degree == 0 {
        out.push(BracketMonomial::one());
        return out;
    }
    let mut rows = vec![Vec::with_capacity(size); degree];
    place(1, size * degree, size, &mut rows, side, &mut out);
    out.sort();
    out
}

/// Hook length count of standard tableaux of the `degree x size` rectangle.
pub fn standard_multilinear_count(size: usize, degree: usize) -> BigUint {
    let n = size * degree;
    let mut num = BigUint::one();
    for i in 2..=n {
        num *= BigUint::from(i);
    }
    let mut den = BigUint::one();
    for r in 0..degree {
        for c in 0..size {
            den *= BigUint::from((size - c) + (degree - r) - 1);
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        for (k, d, expected) in [(2usize, 2usize, 2u32), (2, 3, 5), (3, 2, 5), (2, 4, 14), (3, 3, 42), (2, 1, 1)] {
            let list = enumerate_standard_multilinear(Side::B, k, d);
            assert_eq!(list.len() as u32, expected, "k={k} d={d}");
            assert_eq!(standard_multilinear_count(k, d), BigUint::from(expected));
            assert!(list.iter().all(|m| m.is_standard()));
            assert!(list.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn two_by_two_basis() {
        let list = enumerate_standard_multilinear(Side::B, 2, 2);
        let shown: Vec<String> = list.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["⟨1 2⟩⟨3 4⟩", "⟨1 3⟩⟨2 4⟩"]);
    }
}
