//! Faithful density matrices, tangent vectors, the spectral factorization of
//! a state into a (special unitary, probability vector) pair, and seeded
//! random sampling of states and unitaries.
//!
//! A faithful state ρ factors as ρ = U diag(p) U† with eigenvalues ascending
//! and det(U) = 1. [`fold`] evaluates that product; [`unfold`] inverts it.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{QigError, Result};
use crate::matcore::{
    spectral_decompose, unitary_from_hermitian, CMatrix, Complex64, Hermitian, RESIDUAL_TOL,
};

/// Smallest admissible eigenvalue of a faithful state. Metric superoperators
/// divide by eigenvalues, so zero is kept at a distance.
pub const FAITHFULNESS_FLOOR: f64 = 1e-10;
/// Tolerance on trace and zero-sum checks at construction.
pub const TRACE_TOL: f64 = 1e-12;
/// Tolerance on |det(U) - 1| for special unitaries.
pub const DET_TOL: f64 = 1e-10;

/// Strictly positive probability vector on the open simplex interior.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    p: Vec<f64>,
}

impl ProbVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(QigError::InvalidProbability("empty vector".into()));
        }
        if let Some(&bad) = p.iter().find(|&&x| x.is_nan() || x <= 1e-12) {
            return Err(QigError::InvalidProbability(format!(
                "entry {bad} not strictly positive"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(QigError::InvalidProbability(format!("sum {sum} != 1")));
        }
        Ok(Self { p })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            p: vec![1.0 / n as f64; n],
        }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, j: usize) -> f64 {
        self.p[j]
    }
}

/// Faithful quantum state: Hermitian, unit trace, strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    h: Hermitian,
}

impl DensityMatrix {
    pub fn new(h: Hermitian) -> Result<Self> {
        let tr = h.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(QigError::TraceNotOne(tr));
        }
        let spec = spectral_decompose(&h);
        if spec.eigenvalues[0] <= FAITHFULNESS_FLOOR {
            return Err(QigError::NotFaithful(spec.eigenvalues[0]));
        }
        Ok(Self { h })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(Hermitian::new(m)?)
    }

    /// Maximally mixed state I/n.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            h: Hermitian::identity(n).scale(1.0 / n as f64),
        }
    }

    pub fn from_probabilities(p: &ProbVector) -> Self {
        Self {
            h: Hermitian::from_real_diagonal(p.as_slice()),
        }
    }

    pub fn hermitian(&self) -> &Hermitian {
        &self.h
    }

    pub fn matrix(&self) -> &CMatrix {
        self.h.matrix()
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Conjugate by a unitary: `V ρ V†`.
    pub fn conjugate(&self, v: &CMatrix) -> Result<Self> {
        let m = v.mul(self.matrix()).mul(&v.adjoint());
        Self::new(Hermitian::symmetrize(m))
    }
}

/// Tangent vector at a faithful state in the linear identification:
/// a traceless Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    h: Hermitian,
}

impl TangentVector {
    pub fn new(h: Hermitian) -> Result<Self> {
        let tr = h.trace();
        if tr.abs() > TRACE_TOL {
            return Err(QigError::NotTraceless(tr));
        }
        Ok(Self { h })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            h: Hermitian::zeros(n),
        }
    }

    /// Remove the trace component. For vectors that pick up float dust, e.g.
    /// images of a channel.
    pub fn project(h: Hermitian) -> Self {
        let n = h.dim();
        let shift = Hermitian::identity(n).scale(h.trace() / n as f64);
        Self { h: h.sub(&shift) }
    }

    pub fn hermitian(&self) -> &Hermitian {
        &self.h
    }

    pub fn matrix(&self) -> &CMatrix {
        self.h.matrix()
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { h: self.h.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            h: self.h.add(&other.h),
        }
    }

    pub fn conjugate(&self, v: &CMatrix) -> Self {
        let m = v.mul(self.matrix()).mul(&v.adjoint());
        Self {
            h: Hermitian::symmetrize(m),
        }
    }
}

/// A point (U, p) of the product SU(n) × (open simplex).
#[derive(Debug, Clone)]
pub struct UnfoldedPoint {
    u: CMatrix,
    p: ProbVector,
}

impl UnfoldedPoint {
    pub fn new(u: CMatrix, p: ProbVector) -> Result<Self> {
        if u.dim() != p.len() {
            return Err(QigError::DimensionMismatch(u.dim(), p.len()));
        }
        let ur = u.unitarity_residual();
        if ur > RESIDUAL_TOL {
            return Err(QigError::NotUnitary(ur));
        }
        let det = u.determinant();
        let dr = (det - Complex::new(1.0, 0.0)).norm();
        if dr > DET_TOL {
            return Err(QigError::NotSpecialUnitary(dr));
        }
        Ok(Self { u, p })
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.u
    }

    pub fn probabilities(&self) -> &ProbVector {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    /// (U e^{isH}, p + s a): the point reached by pushing along an unfolded
    /// tangent for parameter s. Errors when the simplex leg exits the
    /// strictly positive region.
    pub fn push(&self, t: &UnfoldedTangent, s: f64) -> Result<UnfoldedPoint> {
        let n = self.dim();
        let mut p = Vec::with_capacity(n);
        for j in 0..n {
            p.push(self.p.get(j) + s * t.simplex()[j]);
        }
        if p.iter().any(|&x| x.is_nan() || x <= FAITHFULNESS_FLOOR) {
            return Err(QigError::BoundaryBreach(s));
        }
        let sum: f64 = p.iter().sum();
        // renormalize away the float dust so ProbVector's 1e-12 gate holds
        for x in &mut p {
            *x /= sum;
        }
        let u = self.u.mul(&unitary_from_hermitian(t.generator(), s));
        UnfoldedPoint::new(u, ProbVector::new(p)?)
    }
}

/// Tangent direction (iH, a) on the unfolding space: H traceless Hermitian,
/// a a zero-sum simplex direction.
#[derive(Debug, Clone)]
pub struct UnfoldedTangent {
    h: Hermitian,
    a: Vec<f64>,
}

impl UnfoldedTangent {
    pub fn new(h: Hermitian, a: Vec<f64>) -> Result<Self> {
        if h.dim() != a.len() {
            return Err(QigError::DimensionMismatch(h.dim(), a.len()));
        }
        let tr = h.trace();
        if tr.abs() > TRACE_TOL {
            return Err(QigError::NotTraceless(tr));
        }
        let asum: f64 = a.iter().sum();
        if asum.abs() > TRACE_TOL {
            return Err(QigError::InvalidProbability(format!(
                "simplex direction sums to {asum}, not 0"
            )));
        }
        Ok(Self { h, a })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            h: Hermitian::zeros(n),
            a: vec![0.0; n],
        }
    }

    pub fn generator(&self) -> &Hermitian {
        &self.h
    }

    pub fn simplex(&self) -> &[f64] {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            h: self.h.scale(c),
            a: self.a.iter().map(|x| c * x).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            h: self.h.add(&other.h),
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    /// Largest component across the generator entries and the simplex leg.
    pub fn max_component(&self) -> f64 {
        self.a.iter().fold(self.h.max_abs(), |m, x| m.max(x.abs()))
    }

    /// Rescale so the largest component is `target`.
    pub fn with_max_component(&self, target: f64) -> Self {
        let m = self.max_component();
        if m == 0.0 {
            self.clone()
        } else {
            self.scale(target / m)
        }
    }
}

/// Evaluate the product map: (U, p) ↦ U diag(p) U†.
pub fn fold(x: &UnfoldedPoint) -> Result<DensityMatrix> {
    let d = CMatrix::from_real_diagonal(x.probabilities().as_slice());
    let m = x.unitary().mul(&d).mul(&x.unitary().adjoint());
    DensityMatrix::new(Hermitian::symmetrize(m))
}

/// Factor a faithful state into (U, p) with eigenvalues ascending and
/// det(U) = 1. Column phases are normalized (largest entry real positive)
/// before a single column absorbs the determinant phase, so the result is
/// deterministic for nondegenerate spectra.
pub fn unfold(rho: &DensityMatrix) -> Result<UnfoldedPoint> {
    let spec = spectral_decompose(rho.hermitian());
    if spec.eigenvalues[0] <= FAITHFULNESS_FLOOR {
        return Err(QigError::NotFaithful(spec.eigenvalues[0]));
    }
    let n = rho.dim();
    let mut u = spec.eigenvectors.raw().clone();
    for j in 0..n {
        let mut best = 0usize;
        let mut best_norm = 0.0f64;
        for i in 0..n {
            let nm = u[(i, j)].norm();
            if nm > best_norm + 1e-12 {
                best_norm = nm;
                best = i;
            }
        }
        let z = u[(best, j)];
        if z.norm() > 0.0 {
            let phase = z.conj() / z.norm();
            for i in 0..n {
                u[(i, j)] *= phase;
            }
        }
    }
    let u = CMatrix::from_raw(u)?;
    let det = u.determinant();
    // det is a unit-modulus phase for unitary u; push its inverse into the
    // last column to land in SU(n)
    let correction = det.conj() / det.norm();
    let mut raw = u.raw().clone();
    for i in 0..n {
        raw[(i, n - 1)] *= correction;
    }
    let sum: f64 = spec.eigenvalues.iter().sum();
    let p = ProbVector::new(spec.eigenvalues.iter().map(|x| x / sum).collect())?;
    UnfoldedPoint::new(CMatrix::from_raw(raw)?, p)
}

/// Tangent map of the product map at (U, p) applied to (iH, a):
/// `U (i[H, diag(p)] + diag(a)) U†`, a traceless Hermitian matrix.
pub fn tangent_map_pi(x: &UnfoldedPoint, t: &UnfoldedTangent) -> Result<TangentVector> {
    if x.dim() != t.dim() {
        return Err(QigError::DimensionMismatch(x.dim(), t.dim()));
    }
    let n = x.dim();
    let p = x.probabilities();
    let inner = CMatrix::from_fn(n, |i, j| {
        let mut z = Complex::new(0.0, 1.0) * t.generator().get(i, j) * (p.get(j) - p.get(i));
        if i == j {
            z += Complex::new(t.simplex()[i], 0.0);
        }
        z
    });
    let m = x.unitary().mul(&inner).mul(&x.unitary().adjoint());
    TangentVector::new(Hermitian::symmetrize(m))
}

/// Invert [`tangent_map_pi`] on its horizontal complement: given a tangent
/// vector v at fold(x), return the unique (iH, a) with zero Cartan component
/// mapping onto it. Requires a nondegenerate probability vector.
pub fn horizontal_lift(x: &UnfoldedPoint, v: &TangentVector) -> Result<UnfoldedTangent> {
    if x.dim() != v.dim() {
        return Err(QigError::DimensionMismatch(x.dim(), v.dim()));
    }
    let n = x.dim();
    let p = x.probabilities();
    for j in 0..n {
        for k in (j + 1)..n {
            if (p.get(j) - p.get(k)).abs() < 1e-12 {
                return Err(QigError::InvalidParameter(format!(
                    "degenerate eigenvalues p[{j}] = p[{k}]; horizontal lift undefined"
                )));
            }
        }
    }
    let vt = v.conjugate(&x.unitary().adjoint());
    let mut h = CMatrix::zeros(n);
    let mut a = vec![0.0; n];
    for (i, ai) in a.iter_mut().enumerate() {
        *ai = vt.hermitian().get(i, i).re;
        for j in 0..n {
            if i != j {
                let z = vt.hermitian().get(i, j) / Complex::new(0.0, p.get(j) - p.get(i));
                h.set(i, j, z);
            }
        }
    }
    UnfoldedTangent::new(Hermitian::new(h)?, a)
}

/// Dimension of the manifold of rank-k states on an n-level system:
/// `2nk - k² - 1`.
pub fn stratum_dimension(n: usize, k: usize) -> Result<usize> {
    if k < 1 || k > n {
        return Err(QigError::IndexBounds(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    Ok(2 * n * k - k * k - 1)
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Square matrix of standard complex Gaussians.
pub fn ginibre_rng(n: usize, rng: &mut impl Rng) -> CMatrix {
    let entries: Vec<Complex64> = (0..n * n)
        .map(|_| Complex::new(standard_normal(rng), standard_normal(rng)) / 2f64.sqrt())
        .collect();
    CMatrix::new(n, entries).expect("square by construction")
}

/// Haar-distributed special unitary: QR of a Ginibre matrix with the R
/// diagonal phases normalized, then one column rescaled so det = 1.
pub fn random_unitary_rng(n: usize, rng: &mut impl Rng) -> CMatrix {
    let g = ginibre_rng(n, rng);
    let qr = g.raw().clone().qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q.clone_owned();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                u[(i, j)] *= phase;
            }
        }
    }
    let cm = CMatrix::from_raw(u).expect("square");
    let det = cm.determinant();
    let correction = det.conj() / det.norm();
    let mut raw = cm.raw().clone();
    for i in 0..n {
        raw[(i, n - 1)] *= correction;
    }
    CMatrix::from_raw(raw).expect("square")
}

/// Seeded Haar-distributed special unitary.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unitary_rng(n, &mut rng)
}

/// Ginibre-induced faithful state GG†/Tr(GG†), resampled while the smallest
/// eigenvalue is at or below 1e-8.
pub fn random_density_rng(n: usize, rng: &mut impl Rng) -> DensityMatrix {
    loop {
        let g = ginibre_rng(n, rng);
        let gg = g.mul(&g.adjoint());
        let tr = gg.trace().re;
        let h = Hermitian::symmetrize(gg.scale(Complex::new(1.0 / tr, 0.0)));
        let spec = spectral_decompose(&h);
        if spec.eigenvalues[0] > 1e-8 {
            return DensityMatrix::new(h).expect("normalized faithful state");
        }
    }
}

/// Seeded Ginibre-induced faithful state.
pub fn random_density(n: usize, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_rng(n, &mut rng)
}

/// GUE-style random Hermitian matrix.
pub fn random_hermitian_rng(n: usize, rng: &mut impl Rng) -> Hermitian {
    Hermitian::symmetrize(ginibre_rng(n, rng))
}

/// Random traceless Hermitian matrix.
pub fn random_tangent_rng(n: usize, rng: &mut impl Rng) -> TangentVector {
    TangentVector::project(random_hermitian_rng(n, rng))
}

/// Random zero-sum real vector.
pub fn random_zero_sum_rng(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut a: Vec<f64> = (0..n).map(|_| standard_normal(rng)).collect();
    let mean = a.iter().sum::<f64>() / n as f64;
    for x in &mut a {
        *x -= mean;
    }
    a
}

/// Random unfolded tangent (traceless H, zero-sum a).
pub fn random_unfolded_tangent_rng(n: usize, rng: &mut impl Rng) -> UnfoldedTangent {
    let h = random_tangent_rng(n, rng);
    let a = random_zero_sum_rng(n, rng);
    UnfoldedTangent::new(h.hermitian().clone(), a).expect("constructed traceless / zero-sum")
}

/// Random probability vector with all entries above `floor`, by rejection.
pub fn random_prob_floor_rng(n: usize, floor: f64, rng: &mut impl Rng) -> ProbVector {
    assert!(
        floor * n as f64 * 2.0 < 1.0,
        "floor too large for rejection sampling"
    );
    loop {
        let mut p: Vec<f64> = (0..n)
            .map(|_| {
                let x = standard_normal(rng);
                x * x
            })
            .collect();
        let s: f64 = p.iter().sum();
        for x in &mut p {
            *x /= s;
        }
        if p.iter().all(|&x| x > floor) {
            return ProbVector::new(p).expect("normalized positive");
        }
    }
}

/// Random interior probability vector with all entries above 1e-3.
pub fn random_prob_rng(n: usize, rng: &mut impl Rng) -> ProbVector {
    random_prob_floor_rng(n, 1e-3, rng)
}

/// Haar-conjugated random state whose spectrum stays above `floor`. Finite
/// difference pipelines want states at a distance from the boundary, where
/// divergence derivatives blow up.
pub fn random_density_bounded_rng(n: usize, floor: f64, rng: &mut impl Rng) -> DensityMatrix {
    let p = random_prob_floor_rng(n, floor, rng);
    let u = random_unitary_rng(n, rng);
    let d = CMatrix::from_real_diagonal(p.as_slice());
    DensityMatrix::new(Hermitian::symmetrize(u.mul(&d).mul(&u.adjoint())))
        .expect("conjugated interior state")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::pauli;
    use approx::assert_relative_eq;

    #[test]
    fn maximally_mixed_unfolds_to_identity() {
        let rho = DensityMatrix::maximally_mixed(2);
        let x = unfold(&rho).unwrap();
        assert_relative_eq!(x.probabilities().get(0), 0.5, epsilon = 1e-15);
        assert!(x.unitary().max_abs_diff(&CMatrix::identity(2)) < 1e-12);
        let back = fold(&x).unwrap();
        assert!(back.hermitian().max_abs_diff(rho.hermitian()) < RESIDUAL_TOL);
    }

    #[test]
    fn sorted_diagonal_unfold() {
        let rho = DensityMatrix::new(Hermitian::from_real_diagonal(&[0.7, 0.3])).unwrap();
        let x = unfold(&rho).unwrap();
        assert_relative_eq!(x.probabilities().get(0), 0.3, epsilon = 1e-15);
        assert_relative_eq!(x.probabilities().get(1), 0.7, epsilon = 1e-15);
        // determinant-1 permutation-phase matrix
        let det = x.unitary().determinant();
        assert!((det - Complex::new(1.0, 0.0)).norm() < DET_TOL);
        assert!(fold(&x).unwrap().hermitian().max_abs_diff(rho.hermitian()) < RESIDUAL_TOL);
    }

    #[test]
    fn fold_unfold_round_trip_random() {
        for seed in 0..8u64 {
            for n in [2usize, 3, 5] {
                let rho = random_density(n, 1000 + seed);
                let x = unfold(&rho).unwrap();
                let back = fold(&x).unwrap();
                assert!(
                    back.hermitian().max_abs_diff(rho.hermitian()) < RESIDUAL_TOL,
                    "round trip failed at n={n} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn unfold_after_fold_recovers_sorted_spectrum() {
        // p already ascending: the spectrum comes back through the round
        // trip; U only up to isotropy, so compare states
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let u = random_unitary_rng(3, &mut rng);
        let p = ProbVector::new(vec![0.15, 0.35, 0.5]).unwrap();
        let x = UnfoldedPoint::new(u, p.clone()).unwrap();
        let rho = fold(&x).unwrap();
        let y = unfold(&rho).unwrap();
        for j in 0..3 {
            assert!((y.probabilities().get(j) - p.get(j)).abs() < RESIDUAL_TOL);
        }
        let back = fold(&y).unwrap();
        assert!(back.hermitian().max_abs_diff(rho.hermitian()) < RESIDUAL_TOL);
    }

    #[test]
    fn fold_isotropy_invariance() {
        // (U, p) and (U D, p) with D a diagonal unitary give the same state
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary_rng(3, &mut rng);
        let p = ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let x = UnfoldedPoint::new(u.clone(), p.clone()).unwrap();
        let mut d = CMatrix::zeros(3);
        // det(D) = 1 keeps the pair in SU(3)
        d.set(0, 0, Complex::from_polar(1.0, 0.4));
        d.set(1, 1, Complex::from_polar(1.0, -0.9));
        d.set(2, 2, Complex::from_polar(1.0, 0.5));
        let y = UnfoldedPoint::new(u.mul(&d), p).unwrap();
        let a = fold(&x).unwrap();
        let b = fold(&y).unwrap();
        assert!(a.hermitian().max_abs_diff(b.hermitian()) < 1e-13);
    }

    #[test]
    fn tangent_map_kernel_and_diagonal_case() {
        let p = ProbVector::new(vec![0.3, 0.7]).unwrap();
        let x = UnfoldedPoint::new(CMatrix::identity(2), p).unwrap();
        // H commuting with diag(p), a = 0 -> zero
        let h = Hermitian::from_real_diagonal(&[1.0, -1.0]);
        let t = UnfoldedTangent::new(h, vec![0.0, 0.0]).unwrap();
        let v = tangent_map_pi(&x, &t).unwrap();
        assert!(v.hermitian().max_abs() < 1e-15);
        // H = 0, U = I -> diag(a)
        let t2 = UnfoldedTangent::new(Hermitian::zeros(2), vec![0.25, -0.25]).unwrap();
        let v2 = tangent_map_pi(&x, &t2).unwrap();
        assert!(
            v2.hermitian()
                .max_abs_diff(&Hermitian::from_real_diagonal(&[0.25, -0.25]))
                < 1e-15
        );
    }

    #[test]
    fn tangent_map_matches_first_order_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for n in [2usize, 3] {
            let rho = random_density_rng(n, &mut rng);
            let x = unfold(&rho).unwrap();
            let t = random_unfolded_tangent_rng(n, &mut rng);
            let v = tangent_map_pi(&x, &t).unwrap();
            let s = 1e-6;
            let plus = fold(&x.push(&t, s).unwrap()).unwrap();
            let minus = fold(&x.push(&t, -s).unwrap()).unwrap();
            let fd = plus.hermitian().sub(minus.hermitian()).scale(0.5 / s);
            assert!(
                fd.max_abs_diff(v.hermitian()) < 1e-7,
                "finite difference disagrees at n={n}"
            );
        }
    }

    #[test]
    fn tangent_map_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = random_density_rng(3, &mut rng);
        let x = unfold(&rho).unwrap();
        let t1 = random_unfolded_tangent_rng(3, &mut rng);
        let t2 = random_unfolded_tangent_rng(3, &mut rng);
        let lhs = tangent_map_pi(&x, &t1.scale(1.3).add(&t2.scale(-0.4))).unwrap();
        let rhs = tangent_map_pi(&x, &t1)
            .unwrap()
            .scale(1.3)
            .add(&tangent_map_pi(&x, &t2).unwrap().scale(-0.4));
        assert!(lhs.hermitian().max_abs_diff(rhs.hermitian()) < 1e-11);
    }

    #[test]
    fn horizontal_lift_inverts_tangent_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2usize, 4] {
            let rho = random_density_rng(n, &mut rng);
            let x = unfold(&rho).unwrap();
            let v = random_tangent_rng(n, &mut rng);
            let t = horizontal_lift(&x, &v).unwrap();
            let back = tangent_map_pi(&x, &t).unwrap();
            assert!(back.hermitian().max_abs_diff(v.hermitian()) < 1e-10);
        }
    }

    #[test]
    fn unitary_covariance_of_fold() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unitary_rng(3, &mut rng);
        let v = random_unitary_rng(3, &mut rng);
        let p = random_prob_rng(3, &mut rng);
        let x = UnfoldedPoint::new(u.clone(), p.clone()).unwrap();
        let folded = fold(&x).unwrap();
        let conj = folded.conjugate(&v).unwrap();
        // compare states, leaving the det convention of V·U aside
        let vu = v.mul(&u);
        let d = CMatrix::from_real_diagonal(p.as_slice());
        let direct = vu.mul(&d).mul(&vu.adjoint());
        assert!(conj.matrix().max_abs_diff(&direct) < 1e-13);
    }

    #[test]
    fn random_unitary_properties() {
        for n in [2usize, 3, 5] {
            let u = random_unitary(n, 42);
            assert!(u.unitarity_residual() < RESIDUAL_TOL);
            assert!((u.determinant() - Complex::new(1.0, 0.0)).norm() < DET_TOL);
        }
    }

    #[test]
    fn random_unitary_entry_statistics() {
        // |U_00|^2 is Uniform(0,1) for n = 2; its mean over 1000 samples
        // should sit near 1/2 (5 sigma band ~ 0.046)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 2;
        let mut acc = 0.0;
        let trials = 1000;
        for _ in 0..trials {
            let u = random_unitary_rng(n, &mut rng);
            acc += u.get(0, 0).norm_sqr();
        }
        let mean = acc / trials as f64;
        assert!((mean - 0.5).abs() < 0.05, "mean |U00|^2 = {mean}");
    }

    #[test]
    fn random_density_properties() {
        for n in [2usize, 4] {
            let rho = random_density(n, 3);
            assert_relative_eq!(rho.hermitian().trace(), 1.0, epsilon = 1e-13);
            let spec = spectral_decompose(rho.hermitian());
            assert!(spec.eigenvalues[0] > 1e-8);
            let mean = spec.eigenvalues.iter().sum::<f64>() / n as f64;
            assert_relative_eq!(mean, 1.0 / n as f64, epsilon = 1e-13);
        }
    }

    #[test]
    fn stratum_dimensions() {
        assert_eq!(stratum_dimension(3, 3).unwrap(), 8);
        assert_eq!(stratum_dimension(4, 4).unwrap(), 15);
        assert_eq!(stratum_dimension(5, 1).unwrap(), 8);
        assert_eq!(stratum_dimension(3, 2).unwrap(), 7);
        assert!(stratum_dimension(3, 0).is_err());
        assert!(stratum_dimension(3, 4).is_err());
    }

    #[test]
    fn density_invariants_rejected() {
        assert!(DensityMatrix::new(Hermitian::from_real_diagonal(&[0.6, 0.6])).is_err());
        assert!(DensityMatrix::new(Hermitian::from_real_diagonal(&[1.0, 0.0])).is_err());
        assert!(TangentVector::new(Hermitian::from_real_diagonal(&[0.1, 0.2])).is_err());
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn tangent_project_removes_trace() {
        let v = TangentVector::project(pauli(3).add(&Hermitian::identity(2).scale(0.3)));
        assert!(v.hermitian().trace().abs() < 1e-15);
    }
}
