mod common;

use num_traits::Zero;
use segre::bracket::{
    minor_oracle, parse_terms, BracketMonomial, BracketPolynomial, DoubleBracketPolynomial,
};
use segre::random::{int_matrix, rng};
use segre::multipoly::Side;
use segre::segre::{double_expansion, segre_det, SegreShape, DEFAULT_SEED};
use segre::rat;

fn mono(side: Side, n: usize, lists: &[&[usize]]) -> BracketMonomial {
    let raw: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
    let (m, sign) = BracketMonomial::from_raw(side, n, &raw).unwrap().unwrap();
    assert_eq!(sign, 1);
    m
}

fn check(k: usize, l: usize, terms: usize) -> i8 {
    let shape = SegreShape::new(k, l).unwrap();
    let ours = double_expansion(shape, DEFAULT_SEED).unwrap();
    let printed = common::reference(shape);
    assert!(printed.is_standard());
    assert_eq!(printed.len(), terms);
    assert_eq!(ours.poly.len(), terms);
    ours.poly
        .sign_relative_to(&printed)
        .unwrap_or_else(|| panic!("({k},{l}) differs from the printed formula beyond a global sign"))
}

#[test]
fn two_by_two_matches_printed_formula() {
    assert_eq!(check(2, 2, 2), 1);
}

#[test]
fn two_by_three_matches_printed_formula() {
    assert_eq!(check(2, 3, 6), -1);
}

#[test]
fn two_by_four_matches_printed_formula() {
    assert_eq!(check(2, 4, 22), 1);
}

/// Terms where the printed (3,3) formula disagrees with the computed one,
/// written with the computed coefficients: a missing block and six entries
/// printed as 3 instead of 2.
const MISPRINTS: &str = "[123][468][579](-<124><356><789> + <124><357><689> + <125><346><789> \
    - <125><347><689> - <145><267><389>) \
    + [123][456][789](2<123><457><689> + 2<124><356><789> - 2<124><357><689>) \
    - 2[123][457][689]<123><456><789> - 2[124][356][789]<123><456><789> \
    + 2[124][357][689]<123><456><789>";

fn double(src: &str) -> DoubleBracketPolynomial {
    DoubleBracketPolynomial::from_raw_terms(3, 3, 9, &parse_terms(src).unwrap()).unwrap()
}

#[test]
fn three_by_three_counts_and_distinguished_coefficients() {
    let shape = SegreShape::new(3, 3).unwrap();
    let ours = double_expansion(shape, DEFAULT_SEED).unwrap();
    assert_eq!(ours.poly.len(), 110);
    assert!(ours.poly.is_standard());

    let diagonal = mono(Side::A, 9, &[&[1, 4, 7], &[2, 5, 8], &[3, 6, 9]]);
    let expected = BracketPolynomial::monomial(
        Side::B,
        3,
        mono(Side::B, 9, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
        rat(-1),
    );
    assert_eq!(ours.poly.coefficient_of_a(&diagonal), expected);

    let lead = mono(Side::A, 9, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
    let block = ours.poly.coefficient_of_a(&lead);
    assert_eq!(block.len(), 13);
    assert_eq!(block.len(), common::reference(shape).coefficient_of_a(&lead).len());
}

#[test]
fn three_by_three_differs_from_printed_formula_only_at_misprints() {
    let shape = SegreShape::new(3, 3).unwrap();
    let ours = double_expansion(shape, DEFAULT_SEED).unwrap();
    let printed = common::reference(shape);
    assert_eq!(printed.len(), 105);
    let fixes = double(MISPRINTS);
    let mut corrected = printed.clone();
    for ((a, b), c) in fixes.terms() {
        let old = printed.coefficient(a, b);
        corrected.add_term(a.clone(), b.clone(), c - old);
    }
    assert_eq!(ours.poly.sign_relative_to(&corrected), Some(1));
    for ((a, b), c) in ours.poly.terms() {
        if fixes.coefficient(a, b).is_zero() {
            assert_eq!(printed.coefficient(a, b), *c, "{a}{b}");
        } else {
            assert_ne!(printed.coefficient(a, b), *c, "{a}{b}");
        }
    }
}

#[test]
fn three_by_three_computed_formula_is_the_determinant_and_printed_is_not() {
    let shape = SegreShape::new(3, 3).unwrap();
    let ours = double_expansion(shape, DEFAULT_SEED).unwrap();
    let printed = common::reference(shape);
    let mut r = rng(99);
    for _ in 0..10 {
        let a = int_matrix(&mut r, 3, 9, 5);
        let b = int_matrix(&mut r, 3, 9, 5);
        let det = segre_det(&a, &b).unwrap();
        assert_eq!(ours.eval_det(&a, &b), det);
        let p = printed.eval(&mut minor_oracle(&a), &mut minor_oracle(&b));
        if !det.is_zero() {
            assert!(p != det && p != -det.clone());
        }
    }
}
