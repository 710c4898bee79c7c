//! The Petz family of monotone metrics indexed by normalized symmetric
//! operator monotone functions, closed-form evaluations for the
//! Bures-Helstrom, Wigner-Yanase, and Bogoliubov-Kubo-Mori members, the
//! classical Fisher-Rao metric, and the decomposition of a monotone metric
//! pulled back onto SU(n) × simplex coordinates.
//!
//! In the eigenbasis of ρ the metric superoperator is diagonal with weights
//! `p_k f(p_j / p_k)` (Petz 1996), so
//!
//! ```text
//! G_f(ρ; v, w) = Σ_{j,k} conj(v_jk) w_jk / (p_k f(p_j / p_k)).
//! ```
//!
//! When v and w commute with ρ this collapses to the classical Fisher-Rao
//! sum Σ v_jj w_jj / p_j independently of f.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use crate::error::{QigError, Result};
use crate::identifications::MetricFamily;
use crate::matcore::{hs_inner, log_mean, matrix_function, spectral_decompose, Hermitian};
use crate::states::{
    DensityMatrix, ProbVector, TangentVector, UnfoldedPoint, UnfoldedTangent, FAITHFULNESS_FLOOR,
};

/// Scalar function labelling a member of the monotone family, with its
/// normalization (`f(1) = 1`) and symmetry (`f(x) = x f(1/x)`) flags checked
/// numerically at construction.
#[derive(Clone)]
pub struct MonotoneFunction {
    name: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    symmetric: bool,
    normalized: bool,
}

impl fmt::Debug for MonotoneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneFunction")
            .field("name", &self.name)
            .field("symmetric", &self.symmetric)
            .field("normalized", &self.normalized)
            .finish()
    }
}

/// Geometric grid of `count` points spanning `[lo, hi]`.
pub fn log_spaced(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

impl MonotoneFunction {
    /// Flags are verified at construction: `f(1) = 1` within 1e-12 when
    /// `normalized`, and `f(x) = x f(1/x)` within 1e-10 at 32 log-spaced
    /// points when `symmetric`.
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        symmetric: bool,
        normalized: bool,
    ) -> Result<Self> {
        let name = name.into();
        if normalized {
            let at_one = eval(1.0);
            if (at_one - 1.0).abs() > 1e-12 {
                return Err(QigError::FlagViolation(format!(
                    "{name}: f(1) = {at_one}, expected 1"
                )));
            }
        }
        if symmetric {
            for x in log_spaced(32, 1e-3, 1e3) {
                let lhs = eval(x);
                let rhs = x * eval(1.0 / x);
                if (lhs - rhs).abs() > 1e-10 * lhs.abs().max(1.0) {
                    return Err(QigError::FlagViolation(format!(
                        "{name}: f({x}) = {lhs} but x f(1/x) = {rhs}"
                    )));
                }
            }
        }
        Ok(Self {
            name,
            eval: Arc::new(eval),
            symmetric,
            normalized,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }
}

/// The named members of the family, all normalized to f(1) = 1:
///
/// * BH:  `f(x) = (1 + x)/2`
/// * WY:  `f(x) = (1 + √x)²/4`
/// * BKM: `f(x) = (x − 1)/ln x`
///
/// The WY function carries a 1/4 against the unnormalized `(1 + √x)²`
/// convention so that the commuting reduction to Fisher-Rao holds exactly for
/// every member; [`wy_closed`] keeps the unnormalized trace formula and the
/// factor between the two routes is pinned in tests.
pub fn builtin_f(kind: MetricFamily) -> MonotoneFunction {
    let f = match kind {
        MetricFamily::BuresHelstrom => MonotoneFunction::new("BH", |x| 0.5 * (1.0 + x), true, true),
        MetricFamily::WignerYanase => MonotoneFunction::new(
            "WY",
            |x| {
                let s = 1.0 + x.sqrt();
                0.25 * s * s
            },
            true,
            true,
        ),
        MetricFamily::BogoliubovKuboMori => {
            MonotoneFunction::new("BKM", |x| log_mean(x, 1.0), true, true)
        }
    };
    f.expect("builtin functions satisfy their flags")
}

fn petz_weight(f: &MonotoneFunction, pj: f64, pk: f64) -> f64 {
    // ratio in log space so skewed spectra cannot under/overflow
    pk * f.eval((pj.ln() - pk.ln()).exp())
}

/// Monotone metric `G_f(ρ; v, w)` via the eigendecomposition of the Petz
/// superoperator. Refuses functions missing the symmetric or normalized flag.
pub fn petz_metric(
    f: &MonotoneFunction,
    rho: &DensityMatrix,
    v: &TangentVector,
    w: &TangentVector,
) -> Result<f64> {
    if !f.is_symmetric() || !f.is_normalized() {
        return Err(QigError::FlagViolation(format!(
            "{} must be symmetric and normalized for a monotone metric",
            f.name()
        )));
    }
    if rho.dim() != v.dim() || rho.dim() != w.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), v.dim().max(w.dim())));
    }
    let spec = spectral_decompose(rho.hermitian());
    if spec.eigenvalues[0] <= FAITHFULNESS_FLOOR {
        return Err(QigError::NotFaithful(spec.eigenvalues[0]));
    }
    let n = rho.dim();
    let vt = spec.to_eigenbasis(v.matrix());
    let wt = spec.to_eigenbasis(w.matrix());
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            let weight = petz_weight(f, spec.eigenvalues[j], spec.eigenvalues[k]);
            acc += vt.get(j, k).conj() * wt.get(j, k) / weight;
        }
    }
    Ok(acc.re)
}

/// Bures-Helstrom metric in the Jordan identification:
/// `Tr(ρ{a,b}) − Tr(ρa) Tr(ρb)`.
pub fn bh_closed(rho: &DensityMatrix, a: &Hermitian, b: &Hermitian) -> Result<f64> {
    let jp = a.jordan_product(b);
    let t1 = hs_inner(rho.matrix(), jp.matrix())?.re;
    let ma = hs_inner(rho.matrix(), a.matrix())?.re;
    let mb = hs_inner(rho.matrix(), b.matrix())?.re;
    Ok(t1 - ma * mb)
}

/// Wigner-Yanase metric in the square-root identification, in the
/// unnormalized trace convention:
/// `Tr(ρ{a,b}) + Tr(√ρ a √ρ b) − 2 Tr(ρa) Tr(ρb)`.
pub fn wy_closed(rho: &DensityMatrix, a: &Hermitian, b: &Hermitian) -> Result<f64> {
    let jp = a.jordan_product(b);
    let t1 = hs_inner(rho.matrix(), jp.matrix())?.re;
    let sq = matrix_function(rho.hermitian(), f64::sqrt)?;
    let mid = sq.matrix().mul(a.matrix()).mul(sq.matrix()).mul(b.matrix());
    let t2 = mid.trace().re;
    let ma = hs_inner(rho.matrix(), a.matrix())?.re;
    let mb = hs_inner(rho.matrix(), b.matrix())?.re;
    Ok(t1 + t2 - 2.0 * ma * mb)
}

/// Bogoliubov-Kubo-Mori metric in the exponential identification:
/// `∫₀¹ Tr(ρ^λ a ρ^{1−λ} b) dλ − Tr(ρa) Tr(ρb)`, with the λ-integral done in
/// closed form through the logarithmic mean of eigenvalue pairs.
pub fn bkm_closed(rho: &DensityMatrix, a: &Hermitian, b: &Hermitian) -> Result<f64> {
    if rho.dim() != a.dim() || rho.dim() != b.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), a.dim().max(b.dim())));
    }
    let spec = spectral_decompose(rho.hermitian());
    let n = rho.dim();
    let at = spec.to_eigenbasis(a.matrix());
    let bt = spec.to_eigenbasis(b.matrix());
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            let c = log_mean(spec.eigenvalues[j], spec.eigenvalues[k]);
            acc += at.get(j, k) * bt.get(k, j) * c;
        }
    }
    let ma = hs_inner(rho.matrix(), a.matrix())?.re;
    let mb = hs_inner(rho.matrix(), b.matrix())?.re;
    Ok(acc.re - ma * mb)
}

/// Classical Fisher-Rao metric `Σ_j a_j b_j / p_j` on zero-sum directions in
/// the over-complete dp coordinates.
pub fn fisher_rao(p: &ProbVector, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != p.len() || b.len() != p.len() {
        return Err(QigError::DimensionMismatch(p.len(), a.len().max(b.len())));
    }
    for (label, v) in [("a", a), ("b", b)] {
        let s: f64 = v.iter().sum();
        if s.abs() > 1e-9 {
            return Err(QigError::InvalidParameter(format!(
                "direction {label} sums to {s}, not 0"
            )));
        }
    }
    Ok(a.iter()
        .zip(b)
        .zip(p.as_slice())
        .map(|((x, y), pj)| x * y / pj)
        .sum())
}

/// Coefficient of `θ¹_jk ⊗ θ¹_jk` (and `θ²`) in the pulled-back monotone
/// metric: `2 (p_k − p_j)² / (p_k f(p_j / p_k))`.
fn pullback_coeff(f: &MonotoneFunction, pj: f64, pk: f64) -> f64 {
    let d = pk - pj;
    2.0 * d * d / petz_weight(f, pj, pk)
}

/// Block decomposition of a monotone metric pulled back to the product of
/// SU(n) and the simplex: diagonal θ¹/θ² coefficients over pairs j < k, a
/// vanishing θ³ block, and the classical Fisher-Rao block `diag(1/p_j)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PullbackMetricMatrix {
    pub dim: usize,
    /// Zero-based (j, k) pairs with j < k, lexicographic.
    pub pairs: Vec<(usize, usize)>,
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
    /// Identically zero by construction; kept explicit in the serialized form.
    pub theta3: Vec<f64>,
    pub fisher: Vec<Vec<f64>>,
}

/// Evaluate the pulled-back metric blocks at (U, p).
pub fn pullback_metric(f: &MonotoneFunction, x: &UnfoldedPoint) -> Result<PullbackMetricMatrix> {
    if !f.is_symmetric() || !f.is_normalized() {
        return Err(QigError::FlagViolation(format!(
            "{} must be symmetric and normalized",
            f.name()
        )));
    }
    let n = x.dim();
    let p = x.probabilities();
    let mut pairs = Vec::new();
    let mut coeffs = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            pairs.push((j, k));
            coeffs.push(pullback_coeff(f, p.get(j), p.get(k)));
        }
    }
    let fisher = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1.0 / p.get(i) } else { 0.0 })
                .collect()
        })
        .collect();
    Ok(PullbackMetricMatrix {
        dim: n,
        theta3: vec![0.0; pairs.len()],
        theta1: coeffs.clone(),
        theta2: coeffs,
        pairs,
        fisher,
    })
}

/// Pulled-back metric applied to two unfolded tangents (iH, a), (iK, b):
/// the quantum block contracts the off-diagonal entries of H and K with the
/// [`pullback_metric`] coefficients, and the classical block is
/// `fisher_rao(p, a, b)`. Tangents whose generators are diagonal contribute
/// exactly nothing to the quantum part.
pub fn pullback_eval(
    f: &MonotoneFunction,
    x: &UnfoldedPoint,
    t1: &UnfoldedTangent,
    t2: &UnfoldedTangent,
) -> Result<f64> {
    if x.dim() != t1.dim() || x.dim() != t2.dim() {
        return Err(QigError::DimensionMismatch(x.dim(), t1.dim().max(t2.dim())));
    }
    if !f.is_symmetric() || !f.is_normalized() {
        return Err(QigError::FlagViolation(format!(
            "{} must be symmetric and normalized",
            f.name()
        )));
    }
    let n = x.dim();
    let p = x.probabilities();
    let h = t1.generator();
    let k = t2.generator();
    let mut quantum = 0.0;
    for j in 0..n {
        for l in (j + 1)..n {
            let hk = (h.get(j, l).conj() * k.get(j, l)).re;
            if hk != 0.0 {
                quantum += pullback_coeff(f, p.get(j), p.get(l)) * hk;
            }
        }
    }
    let classical = fisher_rao(p, t1.simplex(), t2.simplex())?;
    Ok(quantum + classical)
}
