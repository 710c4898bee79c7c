//! Randomized verification suites over the whole library: closed-form
//! cross-checks, commuting reductions, invariance and monotonicity sweeps,
//! extraction-pipeline comparisons, and geodesic certificates.
//!
//! Every suite is deterministic in (parameters, seed): randomness comes from
//! per-suite ChaCha streams derived from the master seed, and reports carry
//! no ambient state. `worst` is either the largest error (pass when at most
//! the tolerance) or the smallest margin (pass when at least the tolerance).

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channels::{
    divergence_monotonicity_trial, metric_monotonicity_trial, random_channel_rng, KrausMap,
};
use crate::divergences::{broken_overlap_spec, builtin_g, registry};
use crate::error::Result;
use crate::extraction::{check_potential, extract_tensor, f_from_g, verify_correspondence};
use crate::geodesics::{geodesic_residual, geodesic_residual_bent, FRGeodesic};
use crate::identifications::{exp_forward, jordan_forward, sqrt_forward, MetricFamily};
use crate::matcore::{CMatrix, Hermitian};
use crate::metrics::{
    bh_closed, bkm_closed, builtin_f, fisher_rao, log_spaced, petz_metric, pullback_eval, wy_closed,
};
use crate::states::{
    fold, random_density_bounded_rng, random_density_rng, random_hermitian_rng, random_prob_rng,
    random_tangent_rng, random_unfolded_tangent_rng, random_unitary_rng, random_zero_sum_rng,
    tangent_map_pi, unfold, ProbVector, TangentVector, UnfoldedPoint, UnfoldedTangent,
};

/// Knobs shared by every suite.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    /// Hilbert space dimensions to sweep (kept within 2..=8).
    pub dims: Vec<usize>,
    /// Trials per (function, dimension) in the algebraic suites.
    pub trials: usize,
    /// Trials per (function, dimension) in the monotonicity sweeps.
    pub mono_trials: usize,
    pub seed: u64,
    /// Finite-difference step for the extraction suites.
    pub step: f64,
    /// Per-check tolerance overrides, keyed by check name.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4],
            trials: 200,
            mono_trials: 500,
            seed: 7,
            step: 1e-3,
            tolerances: BTreeMap::new(),
        }
    }
}

impl SuiteParams {
    fn tol(&self, name: &str, default: f64) -> f64 {
        *self.tolerances.get(name).unwrap_or(&default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.seed
                .wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        )
    }
}

/// How `worst` compares against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Passes when `worst <= tolerance`.
    MaxError,
    /// Passes when `worst >= tolerance`.
    MinMargin,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn max_error(params: &SuiteParams, name: &str, worst: f64, default_tol: f64) -> Self {
        let tolerance = params.tol(name, default_tol);
        Self {
            name: name.to_string(),
            kind: CheckKind::MaxError,
            worst,
            tolerance,
            passed: worst <= tolerance,
        }
    }

    fn min_margin(params: &SuiteParams, name: &str, worst: f64, default_tol: f64) -> Self {
        let tolerance = params.tol(name, default_tol);
        Self {
            name: name.to_string(),
            kind: CheckKind::MinMargin,
            worst,
            tolerance,
            passed: worst >= tolerance,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            suite: suite.to_string(),
            checks,
            passed,
        }
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Closed-form trace formulas against the superoperator route, for all three
/// named metrics. The WY comparison carries the pinned factor 2 between the
/// normalized family member and the unnormalized trace formula.
pub fn suite_closed_form(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(1);
    let (f_bh, f_wy, f_bkm) = (
        builtin_f(MetricFamily::BuresHelstrom),
        builtin_f(MetricFamily::WignerYanase),
        builtin_f(MetricFamily::BogoliubovKuboMori),
    );
    let mut worst = [0.0f64; 3];
    for &n in &params.dims {
        for _ in 0..params.trials {
            let rho = random_density_rng(n, &mut rng);
            let a = random_hermitian_rng(n, &mut rng);
            let b = random_hermitian_rng(n, &mut rng);
            let bh = bh_closed(&rho, &a, &b)?;
            let gbh = petz_metric(
                &f_bh,
                &rho,
                &jordan_forward(&rho, &a)?,
                &jordan_forward(&rho, &b)?,
            )?;
            worst[0] = worst[0].max(rel_err(bh, gbh));
            let wy = wy_closed(&rho, &a, &b)?;
            let gwy = petz_metric(
                &f_wy,
                &rho,
                &sqrt_forward(&rho, &a)?,
                &sqrt_forward(&rho, &b)?,
            )?;
            worst[1] = worst[1].max(rel_err(2.0 * wy, gwy));
            let bkm = bkm_closed(&rho, &a, &b)?;
            let gbkm = petz_metric(
                &f_bkm,
                &rho,
                &exp_forward(&rho, &a)?,
                &exp_forward(&rho, &b)?,
            )?;
            worst[2] = worst[2].max(rel_err(bkm, gbkm));
        }
    }
    Ok(SuiteReport::new(
        "closed-form-equivalence",
        vec![
            CheckResult::max_error(params, "closed-form-bh", worst[0], 1e-10),
            CheckResult::max_error(params, "closed-form-wy", worst[1], 1e-9),
            CheckResult::max_error(params, "closed-form-bkm", worst[2], 1e-9),
        ],
    ))
}

/// Diagonal tangent pairs: every member of the family must collapse onto the
/// classical Fisher-Rao value.
pub fn suite_commuting_reduction(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(2);
    let mut checks = Vec::new();
    for kind in MetricFamily::ALL {
        let f = builtin_f(kind);
        let mut worst = 0.0f64;
        for &n in &params.dims {
            for _ in 0..params.trials {
                let rho = random_density_rng(n, &mut rng);
                let x = unfold(&rho)?;
                let a = random_zero_sum_rng(n, &mut rng);
                let b = random_zero_sum_rng(n, &mut rng);
                let u = x.unitary();
                let embed = |d: &[f64]| {
                    TangentVector::new(Hermitian::symmetrize(
                        u.mul(&CMatrix::from_real_diagonal(d)).mul(&u.adjoint()),
                    ))
                };
                let va = embed(&a)?;
                let vb = embed(&b)?;
                let g = petz_metric(&f, &rho, &va, &vb)?;
                let fr = fisher_rao(x.probabilities(), &a, &b)?;
                worst = worst.max(rel_err(g, fr));
            }
        }
        checks.push(CheckResult::max_error(
            params,
            &format!("commuting-reduction-{}", f.name().to_lowercase()),
            worst,
            1e-12,
        ));
    }
    Ok(SuiteReport::new("commuting-reduction", checks))
}

/// Haar conjugation invariance for metrics and registered divergences.
pub fn suite_unitary_invariance(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(3);
    let mut worst_metric = 0.0f64;
    let mut worst_div = 0.0f64;
    for &n in &params.dims {
        for _ in 0..params.trials.min(100) {
            let rho = random_density_rng(n, &mut rng);
            let sigma = random_density_rng(n, &mut rng);
            let v = random_tangent_rng(n, &mut rng);
            let w = random_tangent_rng(n, &mut rng);
            let u = random_unitary_rng(n, &mut rng);
            let rho_u = rho.conjugate(&u)?;
            for kind in MetricFamily::ALL {
                let f = builtin_f(kind);
                let g1 = petz_metric(&f, &rho, &v, &w)?;
                let g2 = petz_metric(&f, &rho_u, &v.conjugate(&u), &w.conjugate(&u))?;
                worst_metric = worst_metric.max(rel_err(g1, g2));
            }
            let sigma_u = sigma.conjugate(&u)?;
            for spec in registry().iter().filter(|s| s.is_unitary_covariant()) {
                let s1 = spec.eval(&rho, &sigma)?;
                let s2 = spec.eval(&rho_u, &sigma_u)?;
                worst_div = worst_div.max(rel_err(s1, s2));
            }
        }
    }
    Ok(SuiteReport::new(
        "unitary-invariance",
        vec![
            CheckResult::max_error(params, "unitary-invariance-metrics", worst_metric, 1e-10),
            CheckResult::max_error(params, "unitary-invariance-divergences", worst_div, 1e-10),
        ],
    ))
}

/// Pulled-back split evaluation against the direct tangent-map route, plus
/// exact classical-only values along diagonal generators.
pub fn suite_unfolded_split(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(4);
    let mut checks = Vec::new();
    let mut worst_theta3 = 0.0f64;
    for kind in MetricFamily::ALL {
        let f = builtin_f(kind);
        let mut worst = 0.0f64;
        for &n in &params.dims {
            for _ in 0..params.trials {
                let rho = random_density_rng(n, &mut rng);
                let x = unfold(&rho)?;
                let t1 = random_unfolded_tangent_rng(n, &mut rng);
                let t2 = random_unfolded_tangent_rng(n, &mut rng);
                let split = pullback_eval(&f, &x, &t1, &t2)?;
                let direct = petz_metric(
                    &f,
                    &fold(&x)?,
                    &tangent_map_pi(&x, &t1)?,
                    &tangent_map_pi(&x, &t2)?,
                )?;
                worst = worst.max(rel_err(split, direct));
            }
            // diagonal generators contribute exactly zero quantum part
            let p = random_prob_rng(n, &mut rng);
            let x = UnfoldedPoint::new(CMatrix::identity(n), p.clone())?;
            let mut diag = random_zero_sum_rng(n, &mut rng);
            diag.iter_mut().for_each(|v| *v *= 0.5);
            let h = Hermitian::from_real_diagonal(&diag);
            let a = random_zero_sum_rng(n, &mut rng);
            let b = random_zero_sum_rng(n, &mut rng);
            let t1 = UnfoldedTangent::new(h.clone(), a.clone())?;
            let t2 = UnfoldedTangent::new(h, b.clone())?;
            let val = pullback_eval(&f, &x, &t1, &t2)?;
            let fr = fisher_rao(&p, &a, &b)?;
            worst_theta3 = worst_theta3.max((val - fr).abs());
        }
        checks.push(CheckResult::max_error(
            params,
            &format!("unfolded-split-{}", f.name().to_lowercase()),
            worst,
            1e-10,
        ));
    }
    checks.push(CheckResult::max_error(
        params,
        "unfolded-split-theta3-exact",
        worst_theta3,
        0.0,
    ));
    Ok(SuiteReport::new("unfolded-split", checks))
}

/// Extraction pipeline: the vNU tensor against the BKM metric, the KL tensor
/// against diag(1/p), and the Bures tensor against half of Bures-Helstrom.
pub fn suite_extraction(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(5);
    let vnu = crate::divergences::divergence_by_name("vnu")?;
    let kl = crate::divergences::divergence_by_name("kl-diag")?;
    let bures = crate::divergences::divergence_by_name("bures")?;
    let f_bkm = builtin_f(MetricFamily::BogoliubovKuboMori);
    let f_bh = builtin_f(MetricFamily::BuresHelstrom);

    let mut worst_vnu = 0.0f64;
    for &n in params.dims.iter().filter(|&&n| n <= 3) {
        for _ in 0..params.trials.min(25) {
            let rho = random_density_bounded_rng(n, 0.05, &mut rng);
            let x = unfold(&rho)?;
            let t1 = random_unfolded_tangent_rng(n, &mut rng).with_max_component(0.5);
            let t2 = random_unfolded_tangent_rng(n, &mut rng).with_max_component(0.5);
            let e = extract_tensor(&vnu, &x, &t1, &t2, params.step, true)?.value();
            let m = pullback_eval(&f_bkm, &x, &t1, &t2)?;
            worst_vnu = worst_vnu.max(rel_err(e, m));
        }
    }

    // KL on the simplex: basis pairs against Σ a_j b_j / p_j
    let mut worst_kl = 0.0f64;
    for p in [vec![0.5, 0.5], vec![0.2, 0.3, 0.5]] {
        let n = p.len();
        let x = UnfoldedPoint::new(CMatrix::identity(n), ProbVector::new(p.clone())?)?;
        let mut dirs: Vec<Vec<f64>> = Vec::new();
        for j in 0..n - 1 {
            let mut d = vec![0.0; n];
            d[j] = 1.0;
            d[j + 1] = -1.0;
            dirs.push(d);
        }
        for da in &dirs {
            for db in &dirs {
                let t1 = UnfoldedTangent::new(Hermitian::zeros(n), da.clone())?;
                let t2 = UnfoldedTangent::new(Hermitian::zeros(n), db.clone())?;
                let e = extract_tensor(&kl, &x, &t1, &t2, params.step, true)?.value();
                let expect: f64 = da
                    .iter()
                    .zip(db)
                    .zip(&p)
                    .map(|((a, b), pj)| a * b / pj)
                    .sum();
                worst_kl = worst_kl.max((e - expect).abs());
            }
        }
    }

    let mut worst_bures = 0.0f64;
    for _ in 0..params.trials.min(10) {
        let rho = random_density_bounded_rng(2, 0.05, &mut rng);
        let x = unfold(&rho)?;
        let t1 = random_unfolded_tangent_rng(2, &mut rng).with_max_component(0.5);
        let t2 = random_unfolded_tangent_rng(2, &mut rng).with_max_component(0.5);
        let e = extract_tensor(&bures, &x, &t1, &t2, params.step, true)?.value();
        let m = pullback_eval(&f_bh, &x, &t1, &t2)?;
        worst_bures = worst_bures.max(rel_err(e, 0.5 * m));
    }

    Ok(SuiteReport::new(
        "extraction-pipeline",
        vec![
            CheckResult::max_error(params, "extraction-vnu-vs-bkm", worst_vnu, 1e-5),
            CheckResult::max_error(params, "extraction-kl-fisher-rao", worst_kl, 1e-8),
            CheckResult::max_error(params, "extraction-bures-half-bh", worst_bures, 1e-5),
        ],
    ))
}

/// Scalar f↔g algebra at log-spaced points and the full tensor-level
/// correspondence for the builtin g-functions.
pub fn suite_fg_correspondence(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(6);
    let mut worst_algebra = 0.0f64;
    let mut worst_norm = 0.0f64;
    for kind in MetricFamily::ALL {
        let g = builtin_g(kind);
        let f_derived = f_from_g(&g)?;
        let f_named = builtin_f(kind);
        for x in log_spaced(32, 1e-3, 1e3) {
            worst_algebra = worst_algebra.max(rel_err(f_derived.eval(x), f_named.eval(x)));
        }
        worst_norm = worst_norm.max((f_derived.eval(1.0) - 1.0).abs());
    }
    let mut checks = vec![
        CheckResult::max_error(params, "fg-algebra", worst_algebra, 1e-10),
        CheckResult::max_error(params, "fg-normalization", worst_norm, 1e-12),
    ];
    for kind in MetricFamily::ALL {
        let g = builtin_g(kind);
        let mut worst = 0.0f64;
        for &n in params.dims.iter().filter(|&&n| n <= 3) {
            let rho = random_density_bounded_rng(n, 0.05, &mut rng);
            let x = unfold(&rho)?;
            let report =
                verify_correspondence(&g, &x, params.trials.min(8), params.step, params.seed)?;
            worst = worst.max(report.max_rel_err);
        }
        checks.push(CheckResult::max_error(
            params,
            &format!("correspondence-{}", g.name()),
            worst,
            1e-4,
        ));
    }
    Ok(SuiteReport::new("fg-correspondence", checks))
}

/// Contraction sweeps for metrics and monotone divergences, plus the
/// unitary-channel equality case.
pub fn suite_monotonicity(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(7);
    let dims: Vec<usize> = params.dims.iter().cloned().filter(|&n| n <= 4).collect();
    let mut checks = Vec::new();
    let mut worst_unitary = 0.0f64;

    for kind in MetricFamily::ALL {
        let f = builtin_f(kind);
        let mut min_margin = f64::MAX;
        for &n in &dims {
            for _ in 0..params.mono_trials {
                let phi = random_channel_rng(n, &mut rng)?;
                let rho = random_density_bounded_rng(n, 0.02, &mut rng);
                let v = random_tangent_rng(n, &mut rng).scale(0.5);
                let outcome = metric_monotonicity_trial(&f, &phi, &rho, &v)?;
                if outcome.floored {
                    continue;
                }
                min_margin = min_margin.min(outcome.margin);
            }
            let u = random_unitary_rng(n, &mut rng);
            let phi = KrausMap::unitary(&u);
            let rho = random_density_bounded_rng(n, 0.02, &mut rng);
            let v = random_tangent_rng(n, &mut rng).scale(0.5);
            worst_unitary =
                worst_unitary.max(metric_monotonicity_trial(&f, &phi, &rho, &v)?.margin.abs());
        }
        checks.push(CheckResult::min_margin(
            params,
            &format!("metric-monotonicity-{}", f.name().to_lowercase()),
            min_margin,
            -1e-8,
        ));
    }

    for spec in registry().iter().filter(|s| s.is_monotone()) {
        let mut min_margin = f64::MAX;
        for &n in &dims {
            for _ in 0..params.mono_trials {
                let phi = random_channel_rng(n, &mut rng)?;
                let rho = random_density_bounded_rng(n, 0.02, &mut rng);
                let sigma = random_density_bounded_rng(n, 0.02, &mut rng);
                let outcome = divergence_monotonicity_trial(spec, &phi, &rho, &sigma)?;
                if outcome.floored {
                    continue;
                }
                min_margin = min_margin.min(outcome.margin);
            }
            let u = random_unitary_rng(n, &mut rng);
            let phi = KrausMap::unitary(&u);
            let rho = random_density_bounded_rng(n, 0.02, &mut rng);
            let sigma = random_density_bounded_rng(n, 0.02, &mut rng);
            worst_unitary = worst_unitary.max(
                divergence_monotonicity_trial(spec, &phi, &rho, &sigma)?
                    .margin
                    .abs(),
            );
        }
        checks.push(CheckResult::min_margin(
            params,
            &format!("divergence-monotonicity-{}", spec.name()),
            min_margin,
            -1e-9,
        ));
    }

    checks.push(CheckResult::max_error(
        params,
        "unitary-zero-margin",
        worst_unitary,
        1e-10,
    ));
    Ok(SuiteReport::new("monotonicity", checks))
}

/// Universal geodesics: one curve per dimension passes the first-variation
/// test under all three named metrics; a bent curve fails it by an order of
/// magnitude; normalization and the qubit closed form hold tightly.
pub fn suite_geodesics(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(8);
    let threshold_factor = 1e-4;
    let mut worst_universality = 0.0f64; // residual / (1e-4 · energy)
    let mut min_control_ratio = f64::MAX; // bent residual / (1e-4 · energy)
    let curves: Vec<(usize, Vec<f64>, Vec<f64>)> = vec![
        (2, vec![0.35, 0.65], vec![0.3, -0.3]),
        (3, vec![0.2, 0.3, 0.5], vec![0.15, -0.25, 0.10]),
    ];
    for (n, p, a) in curves {
        if !params.dims.contains(&n) {
            continue;
        }
        let u = random_unitary_rng(n, &mut rng);
        let pv = ProbVector::new(p)?;
        let x = UnfoldedPoint::new(u, pv.clone())?;
        let geo = FRGeodesic::new(pv, a.clone())?;
        let span = 0.6 * geo.t_max();
        let dt = span / 256.0;
        for kind in MetricFamily::ALL {
            let f = builtin_f(kind);
            let clean = geodesic_residual(&f, &x, &a, span, dt, params.seed)?;
            worst_universality =
                worst_universality.max(clean.residual / (threshold_factor * clean.energy));
            let bent = geodesic_residual_bent(&f, &x, &a, span, dt, params.seed, 0.02)?;
            min_control_ratio =
                min_control_ratio.min(bent.residual / (threshold_factor * bent.energy));
        }
    }

    // Σ p_j(t) = 1 along a generic curve
    let mut worst_norm = 0.0f64;
    let geo = FRGeodesic::new(
        ProbVector::new(vec![0.2, 0.3, 0.5])?,
        vec![0.2, -0.35, 0.15],
    )?;
    for i in 0..100 {
        let t = geo.t_max() * (i as f64 / 100.0 * 1.98 - 0.99);
        let sum: f64 = geo.point(t)?.iter().sum();
        worst_norm = worst_norm.max((sum - 1.0).abs());
    }

    // qubit closed form (0.5 + 0.5 sin t, 0.5 − 0.5 sin t)
    let mut worst_qubit = 0.0f64;
    let qubit = FRGeodesic::new(ProbVector::new(vec![0.5, 0.5])?, vec![0.5, -0.5])?;
    for i in 0..50 {
        let t = (i as f64 / 50.0 - 0.5) * 2.8;
        let pt = qubit.point(t)?;
        worst_qubit = worst_qubit
            .max((pt[0] - 0.5 - 0.5 * t.sin()).abs())
            .max((pt[1] - 0.5 + 0.5 * t.sin()).abs());
    }

    Ok(SuiteReport::new(
        "universal-geodesics",
        vec![
            CheckResult::max_error(params, "geodesic-universality", worst_universality, 1.0),
            CheckResult::min_margin(params, "geodesic-negative-control", min_control_ratio, 10.0),
            CheckResult::max_error(params, "geodesic-normalization", worst_norm, 1e-13),
            CheckResult::max_error(params, "geodesic-qubit-closed-form", worst_qubit, 1e-12),
        ],
    ))
}

/// First-derivative certification for every registered divergence and the
/// broken negative control.
pub fn suite_potentials(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = params.rng(9);
    let mut worst = 0.0f64;
    for spec in registry() {
        for &n in params.dims.iter().filter(|&&n| n <= 4) {
            for _ in 0..params.trials.min(20) {
                let rho = random_density_bounded_rng(n, 0.05, &mut rng);
                let x = unfold(&rho)?;
                let t = random_unfolded_tangent_rng(n, &mut rng).with_max_component(0.5);
                let (l, r) = check_potential(&spec, &x, &t, params.step)?;
                worst = worst.max(l).max(r);
            }
        }
    }
    let mut min_broken = f64::MAX;
    let broken = broken_overlap_spec();
    for _ in 0..params.trials.min(20) {
        let rho = random_density_bounded_rng(3, 0.05, &mut rng);
        let x = unfold(&rho)?;
        let t = random_unfolded_tangent_rng(3, &mut rng).with_max_component(0.5);
        let (l, r) = check_potential(&broken, &x, &t, params.step)?;
        min_broken = min_broken.min(l.max(r));
    }
    Ok(SuiteReport::new(
        "potential-certification",
        vec![
            CheckResult::max_error(params, "potential-residuals", worst, 1e-8),
            CheckResult::min_margin(params, "potential-negative-control", min_broken, 1e-4),
        ],
    ))
}

/// All suites in a fixed order.
pub fn run_all(params: &SuiteParams) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        suite_closed_form(params)?,
        suite_commuting_reduction(params)?,
        suite_unitary_invariance(params)?,
        suite_unfolded_split(params)?,
        suite_extraction(params)?,
        suite_fg_correspondence(params)?,
        suite_monotonicity(params)?,
        suite_geodesics(params)?,
        suite_potentials(params)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_params() -> SuiteParams {
        SuiteParams {
            dims: vec![2, 3],
            trials: 12,
            mono_trials: 20,
            seed: 11,
            step: 1e-3,
            tolerances: BTreeMap::new(),
        }
    }

    #[test]
    fn all_suites_pass_at_reduced_volume() {
        let reports = run_all(&quick_params()).unwrap();
        assert_eq!(reports.len(), 9);
        for r in &reports {
            assert!(r.passed, "suite {} failed: {:?}", r.suite, r.checks);
        }
    }

    #[test]
    fn tolerance_override_forces_failure() {
        let mut params = quick_params();
        params.tolerances.insert("closed-form-bh".into(), 0.0);
        let report = suite_closed_form(&params).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn reports_are_deterministic_for_fixed_seed() {
        let a = suite_closed_form(&quick_params()).unwrap();
        let b = suite_closed_form(&quick_params()).unwrap();
        for (x, y) in a.checks.iter().zip(&b.checks) {
            assert_eq!(x.worst.to_bits(), y.worst.to_bits());
        }
    }
}
