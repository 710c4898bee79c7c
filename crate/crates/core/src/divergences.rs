//! Quantum and classical divergence functions: the relative g-entropy family,
//! von Neumann-Umegaki relative entropy, Bures fidelity, the two-parameter
//! Rényi family, and classical KL / f-divergences.
//!
//! A relative g-entropy evaluates as
//!
//! ```text
//! S_g(ρ, σ) = Σ_{j,k} g(q_j / p_k) · p_k · |⟨k| U†V |j⟩|²
//! ```
//!
//! where ρ = U diag(p) U† and σ = V diag(q) V†. This is the eigen-expansion
//! of `Tr(√ρ g(L_σ R_{ρ⁻¹}) √ρ)`; tests cross-check both routes.

use std::fmt;
use std::sync::Arc;

use crate::error::{QigError, Result};
use crate::identifications::MetricFamily;
use crate::matcore::{matrix_function, spectral_decompose, Hermitian};
use crate::states::{DensityMatrix, ProbVector};

/// Scalar function labelling a relative g-entropy, with metadata flags:
/// `g(1) = 0`, normalized curvature `g″(1) = 1`, and operator convexity
/// (trusted, not verified pointwise).
#[derive(Clone)]
pub struct GFunction {
    name: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    vanishing_at_one: bool,
    normalized_curvature: bool,
    operator_convex: bool,
}

impl fmt::Debug for GFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GFunction")
            .field("name", &self.name)
            .field("vanishing_at_one", &self.vanishing_at_one)
            .field("normalized_curvature", &self.normalized_curvature)
            .field("operator_convex", &self.operator_convex)
            .finish()
    }
}

impl GFunction {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        vanishing_at_one: bool,
        normalized_curvature: bool,
        operator_convex: bool,
    ) -> Result<Self> {
        let name = name.into();
        if vanishing_at_one {
            let at_one = eval(1.0);
            if at_one.abs() > 1e-12 {
                return Err(QigError::FlagViolation(format!(
                    "{name}: g(1) = {at_one}, expected 0"
                )));
            }
        }
        if normalized_curvature {
            let h = 1e-3;
            let second = (eval(1.0 + h) - 2.0 * eval(1.0) + eval(1.0 - h)) / (h * h);
            if (second - 1.0).abs() > 1e-6 {
                return Err(QigError::FlagViolation(format!(
                    "{name}: g''(1) ≈ {second}, expected 1"
                )));
            }
        }
        Ok(Self {
            name,
            eval: Arc::new(eval),
            vanishing_at_one,
            normalized_curvature,
            operator_convex,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vanishes_at_one(&self) -> bool {
        self.vanishing_at_one
    }

    pub fn has_normalized_curvature(&self) -> bool {
        self.normalized_curvature
    }

    pub fn is_operator_convex(&self) -> bool {
        self.operator_convex
    }

    /// Curvature at 1 from a Richardson-extrapolated second difference; exact
    /// 1.0 when the normalized flag is set.
    pub fn curvature_at_one(&self) -> f64 {
        if self.normalized_curvature {
            return 1.0;
        }
        let second =
            |h: f64| (self.eval(1.0 + h) - 2.0 * self.eval(1.0) + self.eval(1.0 - h)) / (h * h);
        let h = 1e-3;
        (4.0 * second(h / 2.0) - second(h)) / 3.0
    }
}

/// The g-functions paired with the three named metrics:
///
/// * BKM: `g(x) = −ln x`
/// * BH:  `g(x) = (1 − x)² / (1 + x)`
/// * WY:  `g(x) = 2 (1 − √x)²`
///
/// All vanish at 1, have unit curvature there, and are operator convex.
pub fn builtin_g(kind: MetricFamily) -> GFunction {
    let g = match kind {
        MetricFamily::BogoliubovKuboMori => {
            GFunction::new("g-bkm", |x: f64| -x.ln(), true, true, true)
        }
        MetricFamily::BuresHelstrom => GFunction::new(
            "g-bh",
            |x: f64| {
                let d = 1.0 - x;
                d * d / (1.0 + x)
            },
            true,
            true,
            true,
        ),
        MetricFamily::WignerYanase => GFunction::new(
            "g-wy",
            |x: f64| {
                let d = 1.0 - x.sqrt();
                2.0 * d * d
            },
            true,
            true,
            true,
        ),
    };
    g.expect("builtin g-functions satisfy their flags")
}

/// Relative g-entropy via the joint eigen-expansion of both states.
pub fn g_entropy(g: &GFunction, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let n = rho.dim();
    let sp = spectral_decompose(rho.hermitian());
    let sq = spectral_decompose(sigma.hermitian());
    if sp.eigenvalues[0] <= 0.0 || sq.eigenvalues[0] <= 0.0 {
        return Err(QigError::NotFaithful(
            sp.eigenvalues[0].min(sq.eigenvalues[0]),
        ));
    }
    // M = U†V, overlap weights |M_kj|²
    let m = sp.eigenvectors.adjoint().mul(&sq.eigenvectors);
    let mut acc = 0.0;
    for k in 0..n {
        let pk = sp.eigenvalues[k];
        let ln_pk = pk.ln();
        for j in 0..n {
            let w = m.get(k, j).norm_sqr();
            if w > 0.0 {
                let ratio = (sq.eigenvalues[j].ln() - ln_pk).exp();
                acc += g.eval(ratio) * pk * w;
            }
        }
    }
    Ok(acc)
}

/// Von Neumann-Umegaki relative entropy `Tr(ρ ln ρ − ρ ln σ)`.
pub fn vnu_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let ln_rho = matrix_function(rho.hermitian(), f64::ln)?;
    let ln_sigma = matrix_function(sigma.hermitian(), f64::ln)?;
    let diff = ln_rho.sub(&ln_sigma);
    Ok(rho.matrix().mul(diff.matrix()).trace().re)
}

/// Mixed-state fidelity `[Tr √(√ρ σ √ρ)]²`, in (0, 1] for faithful states
/// and 1 exactly when ρ = σ.
pub fn bures_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let sqrt_rho = matrix_function(rho.hermitian(), f64::sqrt)?;
    let inner = sqrt_rho.matrix().mul(sigma.matrix()).mul(sqrt_rho.matrix());
    let spec = spectral_decompose(&Hermitian::symmetrize(inner));
    let root_sum: f64 = spec
        .eigenvalues
        .iter()
        .map(|&x| if x > 0.0 { x.sqrt() } else { 0.0 })
        .sum();
    Ok(root_sum * root_sum)
}

/// Divergence form of the fidelity: `2 (1 − √F)`. Its commuting Hessian is
/// half the Fisher-Rao metric, so the tensor it generates is G_BH / 2.
pub fn bures_divergence(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(2.0 * (1.0 - bures_fidelity(rho, sigma)?.sqrt()))
}

/// Two-parameter Rényi relative entropy
/// `(α − 1)⁻¹ ln Tr[(ρ^{α/2z} σ^{(1−α)/z} ρ^{α/2z})^z]`.
///
/// α = 1 is rejected (use [`vnu_entropy`]); z must be positive. The z = 1 and
/// z = α presets are [`alpha_rre`] and [`alpha_qrd`].
pub fn alpha_z_renyi(
    alpha: f64,
    z: f64,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<f64> {
    if alpha.is_nan() || alpha <= 0.0 || (alpha - 1.0).abs() < 1e-12 {
        return Err(QigError::InvalidParameter(format!(
            "alpha must lie in (0,1) ∪ (1,∞), got {alpha}"
        )));
    }
    if z.is_nan() || z <= 0.0 {
        return Err(QigError::InvalidParameter(format!(
            "z must be positive, got {z}"
        )));
    }
    if rho.dim() != sigma.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let a = matrix_function(rho.hermitian(), |x| x.powf(0.5 * alpha / z))?;
    let b = matrix_function(sigma.hermitian(), |x| x.powf((1.0 - alpha) / z))?;
    let sandwich = a.matrix().mul(b.matrix()).mul(a.matrix());
    let spec = spectral_decompose(&Hermitian::symmetrize(sandwich));
    let trace_z: f64 = spec
        .eigenvalues
        .iter()
        .map(|&x| if x > 0.0 { x.powf(z) } else { 0.0 })
        .sum();
    if trace_z.is_nan() || trace_z <= 0.0 {
        return Err(QigError::NonFinite("alpha-z trace".into()));
    }
    Ok(trace_z.ln() / (alpha - 1.0))
}

/// α-Rényi relative entropy, the z = 1 member: `(α−1)⁻¹ ln Tr(ρ^α σ^{1−α})`.
pub fn alpha_rre(alpha: f64, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    alpha_z_renyi(alpha, 1.0, rho, sigma)
}

/// Sandwiched α-Rényi divergence, the z = α member.
pub fn alpha_qrd(alpha: f64, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    alpha_z_renyi(alpha, alpha, rho, sigma)
}

/// Classical Kullback-Leibler divergence `Σ p_j ln(p_j / q_j)`.
pub fn classical_kl(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    if p.len() != q.len() {
        return Err(QigError::DimensionMismatch(p.len(), q.len()));
    }
    Ok(p.as_slice()
        .iter()
        .zip(q.as_slice())
        .map(|(&pj, &qj)| pj * (pj.ln() - qj.ln()))
        .sum())
}

/// Classical f-divergence `Σ f(p_j / q_j) q_j` for convex f with f(1) = 0.
pub fn classical_f_div(fconv: impl Fn(f64) -> f64, p: &ProbVector, q: &ProbVector) -> Result<f64> {
    if p.len() != q.len() {
        return Err(QigError::DimensionMismatch(p.len(), q.len()));
    }
    Ok(p.as_slice()
        .iter()
        .zip(q.as_slice())
        .map(|(&pj, &qj)| fconv(pj / qj) * qj)
        .sum())
}

type Evaluator = Arc<dyn Fn(&DensityMatrix, &DensityMatrix) -> Result<f64> + Send + Sync>;

/// A named two-point function on faithful states with behavioral flags.
#[derive(Clone)]
pub struct DivergenceSpec {
    name: String,
    evaluator: Evaluator,
    params: Vec<(String, f64)>,
    /// S(ρ,ρ) = 0 and S ≥ 0.
    is_divergence: bool,
    /// Monotone under CPTP maps.
    monotone: bool,
    /// S(VρV†, VσV†) = S(ρ, σ) for every unitary V.
    unitary_covariant: bool,
}

impl fmt::Debug for DivergenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DivergenceSpec")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("is_divergence", &self.is_divergence)
            .field("monotone", &self.monotone)
            .finish()
    }
}

impl DivergenceSpec {
    /// Specs flagged as divergence functions are spot-checked for
    /// S(ρ, ρ) = 0 on maximally mixed states at construction.
    pub fn new(
        name: impl Into<String>,
        params: Vec<(String, f64)>,
        is_divergence: bool,
        monotone: bool,
        unitary_covariant: bool,
        evaluator: impl Fn(&DensityMatrix, &DensityMatrix) -> Result<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        let name = name.into();
        if is_divergence {
            for n in [2usize, 3] {
                let rho = DensityMatrix::maximally_mixed(n);
                let v = evaluator(&rho, &rho)?;
                if v.abs() > 1e-10 {
                    return Err(QigError::FlagViolation(format!(
                        "{name}: S(ρ,ρ) = {v} on the maximally mixed state"
                    )));
                }
            }
        }
        Ok(Self {
            name,
            evaluator: Arc::new(evaluator),
            params,
            is_divergence,
            monotone,
            unitary_covariant,
        })
    }

    pub fn eval(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        (self.evaluator)(rho, sigma)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn is_divergence(&self) -> bool {
        self.is_divergence
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    pub fn is_unitary_covariant(&self) -> bool {
        self.unitary_covariant
    }
}

/// Relative g-entropy as a spec; monotone when g is operator convex.
pub fn g_entropy_spec(g: &GFunction) -> DivergenceSpec {
    let gc = g.clone();
    DivergenceSpec::new(
        g.name().to_string(),
        vec![],
        g.vanishes_at_one(),
        g.is_operator_convex(),
        true,
        move |rho, sigma| g_entropy(&gc, rho, sigma),
    )
    .expect("g-entropy specs satisfy their flags")
}

/// The divergence registry: von Neumann-Umegaki, the Bures wrapper, the three
/// builtin g-entropies, two Rényi presets inside their monotone region, and
/// the classical KL of the diagonals (not unitary covariant; kept for
/// simplex-direction extraction checks).
pub fn registry() -> Vec<DivergenceSpec> {
    let mut out = vec![
        DivergenceSpec::new("vnu", vec![], true, true, true, vnu_entropy)
            .expect("vnu is a divergence"),
        DivergenceSpec::new("bures", vec![], true, true, true, bures_divergence)
            .expect("bures is a divergence"),
    ];
    for kind in MetricFamily::ALL {
        out.push(g_entropy_spec(&builtin_g(kind)));
    }
    out.push(
        DivergenceSpec::new(
            "alpha-rre-0.5",
            vec![("alpha".into(), 0.5), ("z".into(), 1.0)],
            true,
            true,
            true,
            |rho, sigma| alpha_rre(0.5, rho, sigma),
        )
        .expect("alpha-rre(0.5) is a divergence"),
    );
    out.push(
        DivergenceSpec::new(
            "alpha-qrd-2",
            vec![("alpha".into(), 2.0), ("z".into(), 2.0)],
            true,
            true,
            true,
            |rho, sigma| alpha_qrd(2.0, rho, sigma),
        )
        .expect("alpha-qrd(2) is a divergence"),
    );
    out.push(
        DivergenceSpec::new("kl-diag", vec![], true, false, false, |rho, sigma| {
            let diag = |m: &DensityMatrix| {
                ProbVector::new((0..m.dim()).map(|i| m.hermitian().get(i, i).re).collect())
            };
            classical_kl(&diag(rho)?, &diag(sigma)?)
        })
        .expect("kl-diag is a divergence"),
    );
    out
}

/// Look up a spec by registry name.
pub fn divergence_by_name(name: &str) -> Result<DivergenceSpec> {
    registry()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| QigError::UnknownName(name.to_string()))
}

/// Deliberately broken two-point function `Tr(ρσ)`: not a potential function,
/// used as the negative control for first-derivative certification.
pub fn broken_overlap_spec() -> DivergenceSpec {
    DivergenceSpec::new(
        "broken-overlap",
        vec![],
        false,
        false,
        true,
        |rho, sigma| Ok(rho.matrix().mul(sigma.matrix()).trace().re),
    )
    .expect("unflagged spec")
}
