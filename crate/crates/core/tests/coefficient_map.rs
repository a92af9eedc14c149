use segre::bracket::{parse_terms, straighten, BracketMonomial, BracketPolynomial, Straightener};
use segre::coeffvar::{
    association_collision, coefficient_span_rank_of, complementary_epsilon_sums,
    interpolate_image, interpolate_image_cubic, separation_check_k2, substitute_brackets,
    uniform_samples, CoefficientMap, HomogeneousForm,
};
use segre::grassmann::PointConfiguration;
use segre::multipoly::{Matrix, Side};
use segre::rat;

fn a_poly(src: &str, size: usize, n: usize) -> BracketPolynomial {
    BracketPolynomial::from_raw_terms(Side::A, size, n, &parse_terms(src).unwrap()).unwrap()
}

fn b_mono(src: &str, n: usize) -> BracketMonomial {
    let raw: Vec<Vec<usize>> = parse_terms(src).unwrap()[0]
        .brackets
        .iter()
        .map(|b| b.indices.clone())
        .collect();
    BracketMonomial::from_raw(Side::B, n, &raw).unwrap().unwrap().0
}

/// The cubic as printed, in the coordinate order
/// <123><456>, <124><356>, <134><256>, <135><246>, <125><346>.
fn printed_cubic() -> HomogeneousForm {
    let terms = [
        ([1, 1, 0, 1, 0], 1),
        ([0, 1, 1, 1, 0], -1),
        ([1, 0, 1, 0, 1], -1),
        ([0, 1, 1, 0, 1], -1),
        ([0, 1, 0, 1, 1], -1),
        ([0, 0, 1, 1, 1], -1),
    ];
    let terms: Vec<(Vec<u32>, _)> = terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))).collect();
    HomogeneousForm::from_terms(5, 3, &terms)
}

#[test]
fn two_by_three_leading_coordinate() {
    let map = CoefficientMap::new(2, 3, 5).unwrap();
    let c = map.coefficient(&b_mono("<123><456>", 6));
    let printed = straighten(&a_poly("[12][34][56] + [14][25][36]", 2, 6));
    assert!(c == printed || c == printed.scale(&rat(-1)), "{c}");
}

#[test]
fn image_cubic_matches_printed_cubic() {
    let result = interpolate_image_cubic(50, 17).unwrap();
    assert_eq!(result.forms.len(), 1);
    let order: Vec<String> = result.coordinates.iter().map(|m| m.to_string()).collect();
    let printed_order = ["<123><456>", "<124><356>", "<134><256>", "<135><246>", "<125><346>"];
    let perm: Vec<usize> = printed_order
        .iter()
        .map(|p| {
            let m = b_mono(p, 6).to_string();
            order.iter().position(|o| *o == m).unwrap()
        })
        .collect();
    let printed = printed_cubic().permute(&perm);
    assert!(result.forms[0].match_up_to_signs(&printed).is_some());
}

#[test]
fn more_samples_keep_the_cubic() {
    let map = CoefficientMap::new(2, 3, 5).unwrap();
    let samples = uniform_samples(2, 6, 100, 3);
    let result = interpolate_image(&map, &samples, 3).unwrap();
    assert_eq!(result.forms.len(), 1);
}

#[test]
fn cubic_vanishes_in_the_bracket_algebra() {
    let result = interpolate_image_cubic(45, 23).unwrap();
    let map = CoefficientMap::new(2, 3, 5).unwrap();
    let mut straightener = Straightener::new();
    let value = substitute_brackets(&result.forms[0], map.coefficients(), &mut straightener);
    assert!(value.is_zero(), "{value}");
}

#[test]
fn span_ranks_fill_the_standard_basis() {
    for (k, l, expected) in [(2, 2, 2), (2, 3, 5), (2, 4, 14), (3, 3, 42)] {
        let map = CoefficientMap::new(k, l, 7).unwrap();
        assert_eq!(coefficient_span_rank_of(&map).unwrap(), expected, "({k},{l})");
    }
}

#[test]
fn block_point_in_three_by_three() {
    let map = CoefficientMap::new(3, 3, 7).unwrap();
    let a = Matrix::from_fn(3, 9, |i, j| if j / 3 == i { rat(1) } else { rat(0) });
    let v = map.apply(&a).unwrap();
    let target = b_mono("<123><456><789>", 9);
    for (b, x) in v.basis.iter().zip(&v.values) {
        assert_eq!(*x != rat(0), *b == target, "{b}");
    }
}

#[test]
fn gale_duals_collide_without_being_equivalent() {
    let map = CoefficientMap::new(3, 2, 7).unwrap();
    for a in uniform_samples(3, 6, 20, 41) {
        let report = association_collision(&map, &PointConfiguration::new(a)).unwrap();
        assert!(report.images_equal);
        assert!(!report.orbit_equivalent);
    }
    assert_eq!(complementary_epsilon_sums(3, 6), vec![9]);
}

#[test]
fn same_orbit_is_not_separated() {
    let map = CoefficientMap::new(2, 3, 7).unwrap();
    let a = uniform_samples(2, 6, 1, 8).pop().unwrap();
    let mut moved = a.clone();
    for c in 0..6 {
        moved.scale_column(c, &rat(c as i64 + 2));
    }
    assert!(map.apply(&a).unwrap().projectively_equal(&map.apply(&moved).unwrap()));
}

#[test]
fn generic_pairs_are_separated() {
    for n in [4, 6, 8] {
        let report = separation_check_k2(n, 25, 5).unwrap();
        assert!(report.all_separated(), "n={n}: {:?}", report.witnesses.first());
    }
    assert!(separation_check_k2(5, 1, 0).is_err());
}
