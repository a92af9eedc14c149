use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;
use segre::bracket::{random_bracket_polynomial, sorting_sign, straighten};
use segre::grassmann::{
    dual_pluecker, is_uniform, primal_from_dual, torus_normal_form, PointConfiguration,
};
use segre::multipoly::{det_exact, Matrix, Side};
use segre::random::rng;
use segre::segre::{double_expansion, segre_det, segre_det_symbolic, DoubleExpansion, SegreShape};
use segre::{rat, ExactMatrix, Rational};

fn matrix(rows: usize, cols: usize, entries: Vec<i64>) -> ExactMatrix {
    Matrix::new(rows, cols, entries.into_iter().map(rat).collect()).unwrap()
}

fn ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, len)
}

fn nonzero_ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], len)
}

fn expansion(k: usize, l: usize) -> &'static DoubleExpansion {
    static CACHE: OnceLock<Vec<DoubleExpansion>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)]
            .iter()
            .map(|&(k, l)| double_expansion(SegreShape::new(k, l).unwrap(), 11).unwrap())
            .collect()
    });
    all.iter()
        .find(|e| e.shape.k == k && e.shape.l == l)
        .expect("precomputed shape")
}

#[test]
fn double_expansion_equals_symbolic_determinant() {
    for (k, l) in [(2, 2), (2, 3), (3, 2)] {
        let shape = SegreShape::new(k, l).unwrap();
        let e = expansion(k, l);
        let sign = Rational::from_integer(i64::from(e.det_sign).into());
        let symbolic = segre_det_symbolic(shape).unwrap();
        assert_eq!(e.poly.expand_to_variables().scale(&sign), symbolic, "({k},{l})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_form_evaluates_to_determinant(
        shape in prop::sample::select(vec![(2usize, 2usize), (2, 3), (3, 2), (2, 4), (3, 3)]),
        seed in any::<u64>(),
    ) {
        let (k, l) = shape;
        let mut r = rng(seed);
        let a = segre::random::int_matrix(&mut r, k, k * l, 6);
        let b = segre::random::int_matrix(&mut r, l, k * l, 6);
        prop_assert_eq!(expansion(k, l).eval_det(&a, &b), segre_det(&a, &b).unwrap());
    }

    #[test]
    fn column_scaling_is_multilinear(a in ints(12), b in ints(18), t in nonzero_ints(6)) {
        let (a, b) = (matrix(2, 6, a), matrix(3, 6, b));
        let mut scaled = a.clone();
        let mut product = Rational::one();
        for (c, tc) in t.iter().enumerate() {
            scaled.scale_column(c, &rat(*tc));
            product *= rat(*tc);
        }
        prop_assert_eq!(segre_det(&scaled, &b).unwrap(), product * segre_det(&a, &b).unwrap());
    }

    #[test]
    fn left_multiplication_scales_by_power_of_det(a in ints(12), b in ints(18), g in ints(4)) {
        let (a, b, g) = (matrix(2, 6, a), matrix(3, 6, b), matrix(2, 2, g));
        let d = det_exact(&g).unwrap();
        let factor = &d * &d * &d;
        prop_assert_eq!(
            segre_det(&g.mul(&a).unwrap(), &b).unwrap(),
            factor * segre_det(&a, &b).unwrap()
        );
    }

    #[test]
    fn point_permutation_changes_only_the_sign(
        a in ints(8), b in ints(8), perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let (a, b) = (matrix(2, 4, a), matrix(2, 4, b));
        let sign = Rational::from_integer(i64::from(sorting_sign(&perm)).into());
        prop_assert_eq!(
            segre_det(&a.select_columns(&perm), &b.select_columns(&perm)).unwrap(),
            sign * segre_det(&a, &b).unwrap()
        );
    }

    #[test]
    fn exchanging_roles_for_square_shapes(a in ints(27), b in ints(27)) {
        let (a, b) = (matrix(3, 9, a), matrix(3, 9, b));
        // the row swap (i, j) -> (j, i) of a 3x3 index grid has three inversions
        prop_assert_eq!(segre_det(&b, &a).unwrap(), -segre_det(&a, &b).unwrap());
    }

    #[test]
    fn straightening_preserves_value_and_is_standard(
        shape in prop::sample::select(vec![(2usize, 6usize), (3, 6), (3, 9)]),
        seed in any::<u64>(),
    ) {
        let (size, n) = shape;
        let mut r = rng(seed);
        let p = random_bracket_polynomial(&mut r, Side::A, size, n, 3, 4);
        let s = straighten(&p);
        prop_assert!(s.is_standard());
        prop_assert_eq!(s.expand_to_variables(), p.expand_to_variables());
    }

    #[test]
    fn normal_form_is_constant_on_orbits(a in ints(12), t in nonzero_ints(6), g in ints(4)) {
        let a = PointConfiguration::new(matrix(2, 6, a));
        let g = matrix(2, 2, g);
        prop_assume!(is_uniform(&a) && !det_exact(&g).unwrap().is_zero());
        let mut moved = g.mul(a.matrix()).unwrap();
        for (c, tc) in t.iter().enumerate() {
            moved.scale_column(c, &rat(*tc));
        }
        let moved = PointConfiguration::new(moved);
        prop_assert_eq!(torus_normal_form(&a).unwrap(), torus_normal_form(&moved).unwrap());
    }

    #[test]
    fn double_complement_is_a_sign(a in ints(15)) {
        let a = PointConfiguration::new(matrix(3, 5, a));
        let q = dual_pluecker(&a).unwrap();
        let twice = primal_from_dual(&primal_from_dual(&q));
        // (-1)^{k(n-k)} with k = 3, n = 5
        prop_assert_eq!(twice.values(), q.values());
    }
}
