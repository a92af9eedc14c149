//! Two-view geometry over the rationals: fundamental matrices from point
//! correspondences and from camera pairs, and the Segre determinant test
//! for `k^2` correspondences.
//!
//! Convention: `F` satisfies `sum_{ij} F_{ij} a_i b_j = a^T F b = 0` for every
//! correspondence `(a, b)`, i.e. the flattening of `F` under the Segre row
//! order annihilates `a (x) b`. This is the transpose of the `b^T F a` form.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multipoly::Matrix;
use crate::random::{derive_seed, int_matrix, rng, small_int, SeededRng};
use crate::segre::segre_matrix;
use crate::{ExactMatrix, Rational};

/// A pair of points `a`, `b` of `P^{k-1}`, as nonzero representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl Correspondence {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "points of length {} and {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
            return Err(Error::InvalidParameter("zero vector is not a point".into()));
        }
        Ok(Correspondence { a, b })
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }
}

/// A linear projection `P^{2k-3} --> P^{k-1}` of full rank `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Camera {
    matrix: ExactMatrix,
}

impl Camera {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        let k = matrix.rows();
        if k < 2 || matrix.cols() != 2 * k - 2 {
            return Err(Error::Shape(format!(
                "camera must be k x (2k-2) with k >= 2, got {}x{}",
                k,
                matrix.cols()
            )));
        }
        let rank = matrix.rank();
        if rank != k {
            return Err(Error::RankDeficient {
                expected: k,
                found: rank,
            });
        }
        Ok(Camera { matrix })
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn project(&self, w: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix.mul_vec(w)
    }
}

/// A `k x k` matrix defined up to scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalMatrix {
    pub f: ExactMatrix,
}

impl FundamentalMatrix {
    pub fn rank(&self) -> usize {
        self.f.rank()
    }

    /// `sum_{ij} F_{ij} a_i b_j`.
    pub fn epipolar(&self, pair: &Correspondence) -> Rational {
        let mut total = Rational::zero();
        for (i, ai) in pair.a.iter().enumerate() {
            for (j, bj) in pair.b.iter().enumerate() {
                total += self.f.get(i, j) * ai * bj;
            }
        }
        total
    }

    /// Entries in Segre row order.
    pub fn flatten(&self) -> Vec<Rational> {
        self.f.entries().to_vec()
    }

    pub fn proportional_to(&self, other: &FundamentalMatrix) -> bool {
        crate::grassmann::projectively_equal(self.f.entries(), other.f.entries())
    }
}

fn point_matrices(pairs: &[Correspondence]) -> Result<(ExactMatrix, ExactMatrix)> {
    let k = pairs
        .first()
        .map(Correspondence::k)
        .ok_or_else(|| Error::InvalidParameter("no correspondences".into()))?;
    if pairs.iter().any(|p| p.k() != k) {
        return Err(Error::DimensionMismatch(
            "correspondences of different lengths".into(),
        ));
    }
    let a_cols: Vec<Vec<Rational>> = pairs.iter().map(|p| p.a.clone()).collect();
    let b_cols: Vec<Vec<Rational>> = pairs.iter().map(|p| p.b.clone()).collect();
    Ok((
        Matrix::from_columns(k, &a_cols)?,
        Matrix::from_columns(k, &b_cols)?,
    ))
}

/// The `k^2 x m` Segre matrix of the correspondences.
pub fn correspondence_segre_matrix(pairs: &[Correspondence]) -> Result<ExactMatrix> {
    let (a, b) = point_matrices(pairs)?;
    segre_matrix(&a, &b)
}

/// Reads `F` off the left kernel of the Segre matrix, which must be a line.
/// Usually `k^2 - 1` correspondences are given, but any number works as long
/// as the kernel is one-dimensional.
pub fn fundamental_from_points(pairs: &[Correspondence]) -> Result<FundamentalMatrix> {
    let s = correspondence_segre_matrix(pairs)?;
    let kernel = s.left_nullspace();
    match kernel.len() {
        0 => Err(Error::EmptyKernel),
        1 => {
            let k = pairs[0].k();
            Ok(FundamentalMatrix {
                f: Matrix::new(k, k, kernel.into_iter().next().unwrap())?,
            })
        }
        d => Err(Error::DegenerateKernel(d)),
    }
}

/// A solution `phi` of `P phi = I`, supported on the pivot rows of `P`.
pub fn right_inverse(p: &ExactMatrix) -> Result<ExactMatrix> {
    let pivots = p.echelon().pivots;
    if pivots.len() != p.rows() {
        return Err(Error::RankDeficient {
            expected: p.rows(),
            found: pivots.len(),
        });
    }
    let inv = p.select_columns(&pivots).inverse()?;
    let mut phi = Matrix::zeros(p.cols(), p.rows());
    for (r, &c) in pivots.iter().enumerate() {
        for j in 0..p.rows() {
            phi.set(c, j, inv.get(r, j).clone());
        }
    }
    Ok(phi)
}

/// `F_{ij} = det[e_j; M e_i; V^T]` with `M = P2 phi` and `V` the image of
/// `ker P1` under `P2`.
pub fn fundamental_from_cameras(p1: &Camera, p2: &Camera) -> Result<FundamentalMatrix> {
    let phi = right_inverse(p1.matrix())?;
    fundamental_with_right_inverse(p1, p2, &phi)
}

/// As [`fundamental_from_cameras`] with a caller-chosen right inverse.
pub fn fundamental_with_right_inverse(
    p1: &Camera,
    p2: &Camera,
    phi: &ExactMatrix,
) -> Result<FundamentalMatrix> {
    let k = p1.k();
    if p2.k() != k {
        return Err(Error::DimensionMismatch("cameras of different sizes".into()));
    }
    if p1.matrix().mul(phi)? != Matrix::identity(k) {
        return Err(Error::InvalidParameter("phi is not a right inverse of P1".into()));
    }
    let kernel = p1.matrix().nullspace();
    let v_cols: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|w| p2.project(w))
        .collect::<Result<_>>()?;
    if k > 2 {
        let v = Matrix::from_columns(k, &v_cols)?;
        if v.rank() != k - 2 {
            return Err(Error::DegenerateCameras(format!(
                "image of the first kernel has rank {} instead of {}",
                v.rank(),
                k - 2
            )));
        }
    }
    let m = p2.matrix().mul(phi)?;
    let f = Matrix::from_fn(k, k, |i, j| {
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(k);
        rows.push((0..k).map(|c| if c == j { crate::rat(1) } else { Rational::zero() }).collect());
        rows.push(m.column(i));
        rows.extend(v_cols.iter().cloned());
        Matrix::from_rows(&rows)
            .and_then(|d| d.determinant())
            .expect("k x k by construction")
    });
    Ok(FundamentalMatrix { f })
}

/// Determinant of the square Segre matrix of `k^2` correspondences; it must
/// vanish if both point sets are projections of one configuration.
pub fn nine_point_test(pairs: &[Correspondence]) -> Result<Rational> {
    let k = pairs.first().map_or(0, Correspondence::k);
    if pairs.len() != k * k {
        return Err(Error::InvalidParameter(format!(
            "need k^2 = {} correspondences, got {}",
            k * k,
            pairs.len()
        )));
    }
    correspondence_segre_matrix(pairs)?.determinant()
}

/// Two cameras and the images of `count` common points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    pub p1: Camera,
    pub p2: Camera,
    pub points: Vec<Vec<Rational>>,
    pub pairs: Vec<Correspondence>,
}

const COORD_BOUND: i64 = 9;
const SCENE_ATTEMPTS: u64 = 200;

fn random_vector(r: &mut SeededRng, len: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..len).map(|_| small_int(r, COORD_BOUND)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn try_scene(k: usize, count: usize, r: &mut SeededRng) -> Option<Scene> {
    let p1 = Camera::new(int_matrix(r, k, 2 * k - 2, COORD_BOUND)).ok()?;
    let p2 = Camera::new(int_matrix(r, k, 2 * k - 2, COORD_BOUND)).ok()?;
    fundamental_from_cameras(&p1, &p2).ok()?;
    let mut points = Vec::with_capacity(count);
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let w = random_vector(r, 2 * k - 2);
        let a = p1.project(&w).ok()?;
        let b = p2.project(&w).ok()?;
        pairs.push(Correspondence::new(a, b).ok()?);
        points.push(w);
    }
    let rank = correspondence_segre_matrix(&pairs).ok()?.rank();
    (rank == count.min(k * k - 1)).then_some(Scene {
        p1,
        p2,
        points,
        pairs,
    })
}

/// Deterministic random scene: cameras of rank `k`, `ker P1` mapped
/// injectively by `P2`, and correspondences whose Segre matrix has the
/// largest rank a common scene allows.
pub fn synth_scene(k: usize, count: usize, seed: u64) -> Result<Scene> {
    if k < 2 || count == 0 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 2 and count >= 1, got k={k}, count={count}"
        )));
    }
    for attempt in 0..SCENE_ATTEMPTS {
        let mut r = rng(derive_seed(seed, attempt));
        if let Some(scene) = try_scene(k, count, &mut r) {
            return Ok(scene);
        }
    }
    Err(Error::DegenerateCameras(format!(
        "no generic scene after {SCENE_ATTEMPTS} attempts"
    )))
}

/// `count` correspondences with independent random points on both sides.
pub fn random_pairs(k: usize, count: usize, seed: u64) -> Vec<Correspondence> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let a = random_vector(&mut r, k);
            let b = random_vector(&mut r, k);
            Correspondence { a, b }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn scene_route_agreement() {
        let scene = synth_scene(3, 8, 4).unwrap();
        let from_points = fundamental_from_points(&scene.pairs).unwrap();
        let from_cameras = fundamental_from_cameras(&scene.p1, &scene.p2).unwrap();
        assert_eq!(from_points.rank(), 2);
        assert_eq!(from_cameras.rank(), 2);
        assert!(from_points.proportional_to(&from_cameras));
        for pair in &scene.pairs {
            assert!(from_points.epipolar(pair).is_zero());
        }
    }

    #[test]
    fn identical_views_are_degenerate() {
        let pairs: Vec<Correspondence> = random_pairs(3, 8, 2)
            .into_iter()
            .map(|p| Correspondence {
                a: p.a.clone(),
                b: p.a,
            })
            .collect();
        assert_eq!(fundamental_from_points(&pairs), Err(Error::DegenerateKernel(3)));
    }

    #[test]
    fn overdetermined_random_input_has_no_kernel() {
        let pairs = random_pairs(3, 9, 3);
        assert_eq!(fundamental_from_points(&pairs), Err(Error::EmptyKernel));
        assert!(!nine_point_test(&pairs).unwrap().is_zero());
    }

    #[test]
    fn two_dimensional_boundary_case() {
        let scene = synth_scene(2, 3, 1).unwrap();
        let f = fundamental_from_cameras(&scene.p1, &scene.p2).unwrap();
        assert_eq!(f.rank(), 2);
        for pair in &scene.pairs {
            assert!(f.epipolar(pair).is_zero());
        }
    }

    #[test]
    fn right_inverse_is_exact() {
        let p = Matrix::from_rows(&[
            vec![rat(0), rat(2), rat(1), rat(0)],
            vec![rat(1), rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(3), rat(1)],
        ])
        .unwrap();
        let phi = right_inverse(&p).unwrap();
        assert_eq!(p.mul(&phi).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn invalid_counts() {
        assert!(nine_point_test(&random_pairs(3, 8, 1)).is_err());
        assert!(synth_scene(3, 0, 1).is_err());
        assert!(Correspondence::new(vec![rat(0); 3], vec![rat(1); 3]).is_err());
    }
}
