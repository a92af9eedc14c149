#![allow(dead_code)]

use segre::bracket::{parse_terms, straighten_double, DoubleBracketPolynomial};
use segre::segre::SegreShape;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// The printed double-bracket formula for a shape, parsed and straightened.
pub fn reference(shape: SegreShape) -> DoubleBracketPolynomial {
    let name = format!("seg{}{}", shape.k, shape.l);
    let raw = parse_terms(&fixture(&name)).expect("fixture parses");
    let poly = DoubleBracketPolynomial::from_raw_terms(shape.k, shape.l, shape.n(), &raw)
        .expect("fixture brackets are well formed");
    straighten_double(&poly)
}
