//! The Segre coefficient map: a configuration `A` of `k*l` points in
//! `P^{k-1}` goes to the coefficients of `Seg(A, B)` in the standard
//! monomials of the `<J>`-brackets, read as a point of projective space.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bracket::{
    enumerate_standard_multilinear, minor_oracle, parse_terms, BracketMonomial, BracketPolynomial, Straightener,
};
use crate::error::{Error, Result};
use crate::grassmann::{
    complement, epsilon, is_uniform, k_subsets, kernel_matrix, projectively_equal,
    torus_normal_form, torus_orbit_equivalent, PointConfiguration,
};
use crate::multipoly::{Matrix, Side};
use crate::random::{derive_seed, int_matrix, rng};
use crate::segre::{double_expansion, DoubleExpansion, SegreShape, DEFAULT_SEED};
use crate::{ExactMatrix, Rational};

/// Values of the coefficient map on an ordered basis of standard
/// B-monomials; meaningful up to a common nonzero factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    pub basis: Vec<BracketMonomial>,
    pub values: Vec<Rational>,
}

impl CoefficientVector {
    pub fn get(&self, m: &BracketMonomial) -> Option<&Rational> {
        self.basis.iter().position(|b| b == m).map(|i| &self.values[i])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn projectively_equal(&self, other: &CoefficientVector) -> bool {
        self.basis == other.basis && projectively_equal(&self.values, &other.values)
    }

    /// Scaled so that the first nonzero value is `1`.
    pub fn normalized(&self) -> CoefficientVector {
        let pivot = self
            .values
            .iter()
            .find(|v| !v.is_zero())
            .cloned()
            .unwrap_or_else(Rational::one);
        CoefficientVector {
            basis: self.basis.clone(),
            values: self.values.iter().map(|v| v / &pivot).collect(),
        }
    }
}

/// The coefficient map for one shape, with the A-polynomial of every
/// standard B-monomial precomputed.
#[derive(Clone, Debug)]
pub struct CoefficientMap {
    expansion: DoubleExpansion,
    basis: Vec<BracketMonomial>,
    coefficients: Vec<BracketPolynomial>,
}

impl CoefficientMap {
    pub fn new(k: usize, l: usize, seed: u64) -> Result<Self> {
        Ok(Self::from_expansion(double_expansion(SegreShape::new(k, l)?, seed)?))
    }

    pub fn from_expansion(expansion: DoubleExpansion) -> Self {
        let shape = expansion.shape;
        let basis = enumerate_standard_multilinear(Side::B, shape.l, shape.k);
        let sign = Rational::from_integer(i64::from(expansion.det_sign).into());
        let coefficients = basis
            .iter()
            .map(|b| expansion.poly.coefficient_of_b(b).scale(&sign))
            .collect();
        CoefficientMap {
            expansion,
            basis,
            coefficients,
        }
    }

    pub fn shape(&self) -> SegreShape {
        self.expansion.shape
    }

    pub fn expansion(&self) -> &DoubleExpansion {
        &self.expansion
    }

    pub fn basis(&self) -> &[BracketMonomial] {
        &self.basis
    }

    /// A-side polynomial multiplying the B-monomial `b` in the Segre
    /// determinant (zero if `b` is not a standard basis element).
    pub fn coefficient(&self, b: &BracketMonomial) -> BracketPolynomial {
        self.basis
            .iter()
            .position(|x| x == b)
            .map(|i| self.coefficients[i].clone())
            .unwrap_or_else(|| BracketPolynomial::zero(Side::A, self.shape().k))
    }

    pub fn coefficients(&self) -> &[BracketPolynomial] {
        &self.coefficients
    }

    pub fn apply(&self, a: &ExactMatrix) -> Result<CoefficientVector> {
        let shape = self.shape();
        if a.rows() != shape.k || a.cols() != shape.n() {
            return Err(Error::Shape(format!(
                "expected a {}x{} configuration, got {}x{}",
                shape.k,
                shape.n(),
                a.rows(),
                a.cols()
            )));
        }
        let mut minor = minor_oracle(a);
        let values: Vec<Rational> = self.coefficients.iter().map(|p| p.eval(&mut minor)).collect();
        let v = CoefficientVector {
            basis: self.basis.clone(),
            values,
        };
        if v.is_zero() {
            return Err(Error::ZeroImage);
        }
        Ok(v)
    }
}

/// Coefficient map of `A` (`k x kl`), with the shape read off `A`.
pub fn coeff_map(a: &PointConfiguration) -> Result<CoefficientVector> {
    let (k, n) = (a.k(), a.n());
    if k == 0 || n % k != 0 {
        return Err(Error::Shape(format!(
            "number of points {n} is not a multiple of k = {k}"
        )));
    }
    CoefficientMap::new(k, n / k, DEFAULT_SEED)?.apply(a.matrix())
}

/// Rank of the coefficient polynomials as vectors in the standard
/// multilinear A-basis.
pub fn coefficient_span_rank(k: usize, l: usize) -> Result<usize> {
    coefficient_span_rank_of(&CoefficientMap::new(k, l, DEFAULT_SEED)?)
}

pub fn coefficient_span_rank_of(map: &CoefficientMap) -> Result<usize> {
    let shape = map.shape();
    let a_basis = enumerate_standard_multilinear(Side::A, shape.k, shape.l);
    let rows: Vec<Vec<Rational>> = map
        .coefficients()
        .iter()
        .map(|p| a_basis.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    Ok(Matrix::from_rows(&rows)?.rank())
}

/// Homogeneous polynomial in `x_0, ..., x_{m-1}`, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    pub vars: usize,
    pub degree: u32,
    pub coeffs: BTreeMap<Vec<u32>, Rational>,
}

/// Exponent vectors of all degree-`d` monomials in `m` variables, in
/// descending lexicographic order (`x_0^d` first).
pub fn monomial_exponents(m: usize, d: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for mut rest in monomial_exponents(m - 1, d - e0) {
            rest.insert(0, e0);
            out.push(rest);
        }
    }
    out
}

fn monomial_value(e: &[u32], x: &[Rational]) -> Rational {
    e.iter().zip(x).fold(Rational::one(), |acc, (&p, xi)| {
        (0..p).fold(acc, |a, _| a * xi)
    })
}

impl HomogeneousForm {
    pub fn from_terms(vars: usize, degree: u32, terms: &[(Vec<u32>, Rational)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), vars);
            if !c.is_zero() {
                coeffs.insert(e.clone(), c.clone());
            }
        }
        HomogeneousForm {
            vars,
            degree,
            coeffs,
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (e, c)| acc + c * monomial_value(e, x))
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> HomogeneousForm {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; self.vars];
                for (i, &p) in e.iter().enumerate() {
                    f[perm[i]] = p;
                }
                (f, c.clone())
            })
            .collect();
        HomogeneousForm {
            vars: self.vars,
            degree: self.degree,
            coeffs,
        }
    }

    /// The form after `x_i -> signs[i] * x_i`.
    pub fn with_signs(&self, signs: &[i8]) -> HomogeneousForm {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let odd = e
                    .iter()
                    .zip(signs)
                    .filter(|(&p, &s)| s < 0 && p % 2 == 1)
                    .count();
                (e.clone(), if odd % 2 == 1 { -c } else { c.clone() })
            })
            .collect();
        HomogeneousForm {
            vars: self.vars,
            degree: self.degree,
            coeffs,
        }
    }

    pub fn proportional_to(&self, other: &HomogeneousForm) -> bool {
        if self.vars != other.vars || self.degree != other.degree {
            return false;
        }
        let keys: Vec<&Vec<u32>> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        let u: Vec<Rational> = keys
            .iter()
            .map(|e| self.coeffs.get(*e).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let v: Vec<Rational> = keys
            .iter()
            .map(|e| other.coeffs.get(*e).cloned().unwrap_or_else(Rational::zero))
            .collect();
        projectively_equal(&u, &v)
    }

    /// A sign vector `s` with `self(s * x)` proportional to `other`, trying
    /// all `2^m` choices in order; `None` if none works.
    pub fn match_up_to_signs(&self, other: &HomogeneousForm) -> Option<Vec<i8>> {
        (0u32..1 << self.vars).find_map(|mask| {
            let signs: Vec<i8> = (0..self.vars)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            self.with_signs(&signs).proportional_to(other).then_some(signs)
        })
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { format!("x{v}") } else { format!("x{v}^{p}") })
                .collect();
            if !abs.is_one() || vars.is_empty() {
                write!(f, "{}", crate::multipoly::rational::format_rational(&abs))?;
                if !vars.is_empty() {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

/// Result of fitting forms of a fixed degree through sampled image points.
#[derive(Clone, Debug)]
pub struct ImageInterpolation {
    /// Coordinate order of the forms: `x_i` is the coefficient of
    /// `coordinates[i]`.
    pub coordinates: Vec<BracketMonomial>,
    pub samples: Vec<CoefficientVector>,
    pub forms: Vec<HomogeneousForm>,
}

/// Random configurations with all maximal minors nonzero.
pub fn uniform_samples(k: usize, n: usize, count: usize, seed: u64) -> Vec<ExactMatrix> {
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0u64;
    while out.len() < count {
        let mut r = rng(derive_seed(seed, attempt));
        attempt += 1;
        let a = int_matrix(&mut r, k, n, 9);
        if is_uniform(&PointConfiguration::new(a.clone())) {
            out.push(a);
        }
    }
    out
}

/// All forms of the given degree vanishing on the images of `samples`.
pub fn interpolate_image(
    map: &CoefficientMap,
    samples: &[ExactMatrix],
    degree: u32,
) -> Result<ImageInterpolation> {
    let images: Vec<CoefficientVector> = samples
        .par_iter()
        .map(|a| map.apply(a))
        .collect::<Result<_>>()?;
    let m = map.basis().len();
    let monomials = monomial_exponents(m, degree);
    let rows: Vec<Vec<Rational>> = images
        .iter()
        .map(|v| monomials.iter().map(|e| monomial_value(e, &v.values)).collect())
        .collect();
    let kernel = Matrix::from_rows(&rows)?.nullspace();
    let forms = kernel
        .into_iter()
        .map(|coeffs| {
            let terms: Vec<(Vec<u32>, Rational)> = monomials.iter().cloned().zip(coeffs).collect();
            HomogeneousForm::from_terms(m, degree, &terms)
        })
        .collect();
    Ok(ImageInterpolation {
        coordinates: map.basis().to_vec(),
        samples: images,
        forms,
    })
}

/// Cubics through `sample_count` random images of the `(k, l) = (2, 3)`
/// map; for at least 40 samples the result is a single cubic.
pub fn interpolate_image_cubic(sample_count: usize, seed: u64) -> Result<ImageInterpolation> {
    if sample_count < 40 {
        return Err(Error::InvalidParameter(format!(
            "need at least 40 samples, got {sample_count}"
        )));
    }
    let map = CoefficientMap::new(2, 3, DEFAULT_SEED)?;
    let samples = uniform_samples(2, 6, sample_count, seed);
    let result = interpolate_image(&map, &samples, 3)?;
    if result.forms.len() != 1 {
        return Err(Error::RankDeficient {
            expected: monomial_exponents(5, 3).len() - 1,
            found: monomial_exponents(5, 3).len() - result.forms.len(),
        });
    }
    Ok(result)
}

/// `form(x_0 = polys[0], ...)` in the bracket algebra, straightened.
pub fn substitute_brackets(
    form: &HomogeneousForm,
    polys: &[BracketPolynomial],
    straightener: &mut Straightener,
) -> BracketPolynomial {
    let first = &polys[0];
    let mut total = BracketPolynomial::zero(first.side(), first.size());
    for (e, c) in &form.coeffs {
        let factors: Vec<BracketPolynomial> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| std::iter::repeat(polys[i].clone()).take(p as usize))
            .collect();
        if let Some(prod) = straightener.straighten_product(&factors) {
            total = total.add(&prod.scale(c));
        }
    }
    total
}

/// Outcome of comparing a configuration with its Gale dual.
#[derive(Clone, Debug)]
pub struct CollisionReport {
    pub a: ExactMatrix,
    pub dual: ExactMatrix,
    pub image: CoefficientVector,
    pub dual_image: CoefficientVector,
    pub images_equal: bool,
    /// `true` means the configuration is self-associated.
    pub orbit_equivalent: bool,
}

/// Compares `A` with `kernel_matrix(A)`. Every coefficient is a combination
/// of complementary products `[I][I^c]`, which Gale duality rescales by one
/// common factor, so the two images agree projectively whenever `n = 2k`.
pub fn association_collision(map: &CoefficientMap, a: &PointConfiguration) -> Result<CollisionReport> {
    let shape = map.shape();
    if shape.l != 2 || a.k() != shape.k || a.n() != shape.n() {
        return Err(Error::Shape(format!(
            "Gale collisions need a {}x{} configuration and l = 2",
            shape.k,
            2 * shape.k
        )));
    }
    if !is_uniform(a) {
        return Err(Error::NotUniform);
    }
    let dual = kernel_matrix(a)?;
    if !is_uniform(&dual) {
        return Err(Error::NotUniform);
    }
    let image = map.apply(a.matrix())?;
    let dual_image = map.apply(dual.matrix())?;
    let images_equal = image.projectively_equal(&dual_image);
    let orbit_equivalent = torus_orbit_equivalent(a, &dual)?;
    Ok(CollisionReport {
        a: a.matrix().clone(),
        dual: dual.into_matrix(),
        image,
        dual_image,
        images_equal,
        orbit_equivalent,
    })
}

/// The distinct values of `eps(I) + eps([n] \ I)` over `k`-subsets `I`.
pub fn complementary_epsilon_sums(k: usize, n: usize) -> Vec<usize> {
    let mut sums: Vec<usize> = k_subsets(n, k)
        .iter()
        .map(|s| epsilon(s) + epsilon(&complement(s, n)))
        .collect();
    sums.sort_unstable();
    sums.dedup();
    sums
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub n: usize,
    pub trials: usize,
    pub separated: usize,
    /// Pairs with distinct normal forms but equal images.
    pub witnesses: Vec<(ExactMatrix, ExactMatrix)>,
}

impl SeparationReport {
    pub fn all_separated(&self) -> bool {
        self.separated == self.trials
    }
}

/// Draws pairs of uniform points of `Gr(2, n)` in different torus orbits and
/// checks that their images differ.
pub fn separation_check_k2(n: usize, trials: usize, seed: u64) -> Result<SeparationReport> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "n must be even and at least 4, got {n}"
        )));
    }
    let map = CoefficientMap::new(2, n / 2, DEFAULT_SEED)?;
    let outcomes: Vec<Option<(ExactMatrix, ExactMatrix)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = derive_seed(seed, t as u64);
            let mut attempt = 0u64;
            loop {
                let pair = uniform_samples(2, n, 2, derive_seed(trial_seed, attempt));
                attempt += 1;
                let (x, y) = (&pair[0], &pair[1]);
                let px = PointConfiguration::new(x.clone());
                let py = PointConfiguration::new(y.clone());
                if torus_normal_form(&px)? == torus_normal_form(&py)? {
                    continue;
                }
                let same = map.apply(x)?.projectively_equal(&map.apply(y)?);
                return Ok(same.then(|| (x.clone(), y.clone())));
            }
        })
        .collect::<Result<_>>()?;
    let witnesses: Vec<(ExactMatrix, ExactMatrix)> = outcomes.into_iter().flatten().collect();
    Ok(SeparationReport {
        n,
        trials,
        separated: trials - witnesses.len(),
        witnesses,
    })
}

/// Evaluates an A-side bracket expression such as `[123][456] - [124][356]`
/// at the configuration `a`.
pub fn evaluate_bracket_expression(a: &ExactMatrix, src: &str) -> Result<Rational> {
    let raw = parse_terms(src)?;
    let poly = BracketPolynomial::from_raw_terms(Side::A, a.rows(), a.cols(), &raw)?;
    Ok(poly.eval(&mut minor_oracle(a)))
}

/// One evaluated candidate coordinate list.
#[derive(Clone, Debug)]
pub struct CandidateValues {
    pub label: String,
    pub expressions: Vec<String>,
    pub values: Vec<Rational>,
}

/// Everything the diagnostic reports about a single configuration; nothing
/// in it is asserted.
#[derive(Clone, Debug)]
pub struct ConfigurationDiagnostic {
    pub uniform: bool,
    pub image: Option<CoefficientVector>,
    pub normal_form: Option<ExactMatrix>,
    pub candidates: Vec<CandidateValues>,
    pub invariants: Vec<(String, Rational)>,
}

/// Evaluates the coefficient map, the torus normal form and every candidate
/// list and invariant at `a`.
pub fn diagnose_configuration(
    map: &CoefficientMap,
    a: &PointConfiguration,
    candidates: &[(&str, &[&str])],
    invariants: &[&str],
) -> Result<ConfigurationDiagnostic> {
    let uniform = is_uniform(a);
    let image = map.apply(a.matrix()).ok();
    let normal_form = torus_normal_form(a).ok();
    let candidates = candidates
        .iter()
        .map(|(label, exprs)| {
            let values = exprs
                .iter()
                .map(|e| evaluate_bracket_expression(a.matrix(), e))
                .collect::<Result<_>>()?;
            Ok(CandidateValues {
                label: label.to_string(),
                expressions: exprs.iter().map(|e| e.to_string()).collect(),
                values,
            })
        })
        .collect::<Result<_>>()?;
    let invariants = invariants
        .iter()
        .map(|e| Ok((e.to_string(), evaluate_bracket_expression(a.matrix(), e)?)))
        .collect::<Result<_>>()?;
    Ok(ConfigurationDiagnostic {
        uniform,
        image,
        normal_form,
        candidates,
        invariants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn b_mono(lists: &[&[usize]]) -> BracketMonomial {
        let raw: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        BracketMonomial::from_raw(Side::B, 9, &raw).unwrap().unwrap().0
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(monomial_exponents(5, 3).len(), 35);
        assert_eq!(monomial_exponents(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn sign_changes() {
        let f = HomogeneousForm::from_terms(2, 2, &[(vec![1, 1], rat(1)), (vec![2, 0], rat(3))]);
        let g = f.with_signs(&[-1, 1]);
        assert_eq!(g.coeffs[&vec![1, 1]], rat(-1));
        assert_eq!(g.coeffs[&vec![2, 0]], rat(3));
        assert_eq!(f.match_up_to_signs(&g.scale_for_test(rat(2))), Some(vec![-1, 1]));
        assert_eq!(f.to_string(), "3*x0^2 + x0*x1");
    }

    impl HomogeneousForm {
        fn scale_for_test(&self, c: Rational) -> HomogeneousForm {
            let mut out = self.clone();
            for v in out.coeffs.values_mut() {
                *v *= &c;
            }
            out
        }
    }

    #[test]
    fn block_point_image() {
        let map = CoefficientMap::new(2, 3, 1).unwrap();
        let a = Matrix::from_rows(&[
            vec![rat(1), rat(1), rat(1), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(1), rat(1), rat(1)],
        ])
        .unwrap();
        let v = map.apply(&a).unwrap();
        let target = b_mono(&[&[1, 2, 3], &[4, 5, 6]]);
        for (b, x) in v.basis.iter().zip(&v.values) {
            assert_eq!(x.is_zero(), *b != target, "{b}");
        }
    }

    #[test]
    fn scaling_does_not_move_the_image() {
        let map = CoefficientMap::new(2, 3, 1).unwrap();
        let a = uniform_samples(2, 6, 1, 4).pop().unwrap();
        let mut scaled = a.clone();
        scaled.scale_column(2, &rat(-5));
        scaled.scale_row(0, &rat(3));
        assert!(map.apply(&a).unwrap().projectively_equal(&map.apply(&scaled).unwrap()));
    }

    #[test]
    fn span_ranks_small() {
        assert_eq!(coefficient_span_rank(2, 2).unwrap(), 2);
        assert_eq!(coefficient_span_rank(2, 3).unwrap(), 5);
    }

    #[test]
    fn epsilon_sum_is_constant() {
        assert_eq!(complementary_epsilon_sums(3, 6), vec![9]);
        assert_eq!(complementary_epsilon_sums(2, 4), vec![4]);
    }

    #[test]
    fn expression_evaluation() {
        let a = Matrix::from_rows(&[
            vec![rat(1), rat(0), rat(1), rat(2)],
            vec![rat(0), rat(1), rat(3), rat(5)],
        ])
        .unwrap();
        assert_eq!(evaluate_bracket_expression(&a, "[12]").unwrap(), rat(1));
        assert_eq!(evaluate_bracket_expression(&a, "[34] - 2[12][13]").unwrap(), rat(-7));
        assert_eq!(evaluate_bracket_expression(&a, "[21]").unwrap(), rat(-1));
        assert!(evaluate_bracket_expression(&a, "[15]").is_err());
    }

    #[test]
    fn zero_image_is_an_error() {
        let map = CoefficientMap::new(2, 2, 1).unwrap();
        let a = Matrix::from_rows(&[vec![rat(1); 4], vec![rat(2); 4]]).unwrap();
        assert_eq!(map.apply(&a), Err(Error::ZeroImage));
    }
}
