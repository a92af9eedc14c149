//! Published double-bracket formulas shipped with the golden files, used to
//! report the global sign of a computed expansion.

use std::collections::BTreeSet;

use segre::bracket::{parse_terms, straighten_double, DoubleBracketPolynomial};
use segre::segre::SegreShape;

const PRINTED: [((usize, usize), &str); 4] = [
    ((2, 2), include_str!("../golden/seg22.printed.txt")),
    ((2, 3), include_str!("../golden/seg23.printed.txt")),
    ((2, 4), include_str!("../golden/seg24.printed.txt")),
    ((3, 3), include_str!("../golden/seg33.printed.txt")),
];

/// The published formula for a shape, straightened.
pub fn printed(shape: SegreShape) -> Option<DoubleBracketPolynomial> {
    let (_, src) = PRINTED.iter().find(|(s, _)| *s == (shape.k, shape.l))?;
    let raw = parse_terms(src).expect("shipped formula parses");
    let p = DoubleBracketPolynomial::from_raw_terms(shape.k, shape.l, shape.n(), &raw)
        .expect("shipped formula is well formed");
    Some(straighten_double(&p))
}

/// Terms where `printed` and `sign * ours` differ.
pub fn mismatches(ours: &DoubleBracketPolynomial, printed: &DoubleBracketPolynomial, sign: i8) -> usize {
    let keys: BTreeSet<_> = ours.terms().keys().chain(printed.terms().keys()).collect();
    let s = segre::rat(i64::from(sign));
    keys.into_iter()
        .filter(|(a, b)| ours.coefficient(a, b) * &s != printed.coefficient(a, b))
        .count()
}

/// The sign with the fewest mismatching terms, and that count.
pub fn compare(shape: SegreShape, ours: &DoubleBracketPolynomial) -> Option<(i8, usize)> {
    let printed = printed(shape)?;
    [1i8, -1]
        .into_iter()
        .map(|s| (s, mismatches(ours, &printed, s)))
        .min_by_key(|&(_, m)| m)
}
