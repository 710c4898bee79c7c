//! Completely positive trace-preserving maps in Kraus form, between spaces
//! of possibly different dimension, and randomized monotonicity trials for
//! metrics and divergences.
//!
//! A monotone metric contracts under every such map, `G(Φρ; Φv, Φv) ≤
//! G(ρ; v, v)`, with equality for unitary channels; monotone divergences
//! satisfy `S(Φρ, Φσ) ≤ S(ρ, σ)`. The trials report the margin of those
//! inequalities on sampled inputs.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::divergences::DivergenceSpec;
use crate::error::{QigError, Result};
use crate::matcore::{spectral_decompose, CMatrix, Complex64, Hermitian, RawMatrix};
use crate::metrics::{petz_metric, MonotoneFunction};
use crate::states::{DensityMatrix, TangentVector};

/// Completeness tolerance Σ K†K = I.
pub const COMPLETENESS_TOL: f64 = 1e-11;
/// Channel outputs are floored at this eigenvalue by mixing with the
/// maximally mixed state before metric evaluation.
pub const OUTPUT_FLOOR: f64 = 1e-8;

/// CPTP map given by Kraus operators of shape dim_out × dim_in.
#[derive(Debug, Clone)]
pub struct KrausMap {
    ops: Vec<RawMatrix>,
    dim_in: usize,
    dim_out: usize,
}

impl KrausMap {
    pub fn new(ops: Vec<RawMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| {
            QigError::InvalidParameter("a Kraus map needs at least one operator".into())
        })?;
        let (dim_out, dim_in) = (first.nrows(), first.ncols());
        if dim_in == 0 || dim_out == 0 {
            return Err(QigError::InvalidParameter(
                "zero-dimensional Kraus operator".into(),
            ));
        }
        for k in &ops {
            if k.nrows() != dim_out || k.ncols() != dim_in {
                return Err(QigError::DimensionMismatch(k.nrows(), dim_out));
            }
        }
        let map = Self {
            ops,
            dim_in,
            dim_out,
        };
        let residual = map.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(QigError::IncompleteKraus(residual));
        }
        Ok(map)
    }

    /// Identity channel on an n-level system.
    pub fn identity(n: usize) -> Self {
        Self {
            ops: vec![RawMatrix::identity(n, n)],
            dim_in: n,
            dim_out: n,
        }
    }

    /// Unitary conjugation channel.
    pub fn unitary(u: &CMatrix) -> Self {
        Self {
            ops: vec![u.raw().clone()],
            dim_in: u.dim(),
            dim_out: u.dim(),
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn ops(&self) -> &[RawMatrix] {
        &self.ops
    }

    /// Max-entry deviation of Σ K†K from the identity.
    pub fn completeness_residual(&self) -> f64 {
        let mut acc = RawMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.ops {
            acc += k.adjoint() * k;
        }
        let mut worst = 0.0f64;
        for i in 0..self.dim_in {
            for j in 0..self.dim_in {
                let expect = if i == j {
                    Complex::new(1.0, 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                };
                worst = worst.max((acc[(i, j)] - expect).norm());
            }
        }
        worst
    }
}

/// Apply the channel to a Hermitian operator: `Σ K a K†`. Linear,
/// Hermiticity-preserving, trace-preserving.
pub fn apply_channel(phi: &KrausMap, a: &Hermitian) -> Result<Hermitian> {
    if a.dim() != phi.dim_in() {
        return Err(QigError::DimensionMismatch(a.dim(), phi.dim_in()));
    }
    let mut acc = RawMatrix::zeros(phi.dim_out(), phi.dim_out());
    for k in phi.ops() {
        acc += k * a.matrix().raw() * k.adjoint();
    }
    Ok(Hermitian::symmetrize(CMatrix::from_raw(acc)?))
}

/// Channel output as a state, mixed toward maximally mixed when its smallest
/// eigenvalue falls at or below [`OUTPUT_FLOOR`]. Returns the state and
/// whether flooring was applied.
pub fn push_state(phi: &KrausMap, rho: &DensityMatrix) -> Result<(DensityMatrix, bool)> {
    let out = apply_channel(phi, rho.hermitian())?;
    let spec = spectral_decompose(&out);
    if spec.eigenvalues[0] > OUTPUT_FLOOR {
        return Ok((DensityMatrix::new(out)?, false));
    }
    let n = out.dim();
    let mixed = out
        .add(&Hermitian::identity(n).scale(OUTPUT_FLOOR / n as f64))
        .scale(1.0 / (1.0 + OUTPUT_FLOOR));
    Ok((DensityMatrix::new(mixed)?, true))
}

/// Pushforward of a tangent vector, re-projected to traceless to absorb
/// float dust.
pub fn push_tangent(phi: &KrausMap, v: &TangentVector) -> Result<TangentVector> {
    Ok(TangentVector::project(apply_channel(phi, v.hermitian())?))
}

/// Haar-random Kraus map: a Haar isometry from dim_in to dim_out · n_kraus,
/// sliced into n_kraus blocks. Completeness holds by construction.
pub fn random_kraus_rng(
    dim_in: usize,
    dim_out: usize,
    n_kraus: usize,
    rng: &mut impl Rng,
) -> Result<KrausMap> {
    if n_kraus == 0 || dim_in == 0 || dim_out == 0 {
        return Err(QigError::InvalidParameter("empty Kraus shape".into()));
    }
    let rows = dim_out * n_kraus;
    if rows < dim_in {
        return Err(QigError::InvalidParameter(format!(
            "no isometry from {dim_in} into {dim_out}×{n_kraus} rows"
        )));
    }
    let g = RawMatrix::from_fn(rows, dim_in, |_, _| {
        Complex64::new(
            rng.sample(rand_distr::StandardNormal),
            rng.sample(rand_distr::StandardNormal),
        )
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut iso = q.clone_owned();
    for j in 0..dim_in {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..rows {
                iso[(i, j)] *= phase;
            }
        }
    }
    let ops = (0..n_kraus)
        .map(|b| iso.rows(b * dim_out, dim_out).clone_owned())
        .collect();
    KrausMap::new(ops)
}

/// Seeded Haar-random Kraus map.
pub fn random_kraus(dim_in: usize, dim_out: usize, n_kraus: usize, seed: u64) -> Result<KrausMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_kraus_rng(dim_in, dim_out, n_kraus, &mut rng)
}

/// Random genuinely contractive channel on an n-level input: 2 or 3 Kraus
/// operators into an output space of dimension n − 1, n, or n + 1.
pub fn random_channel_rng(n: usize, rng: &mut impl Rng) -> Result<KrausMap> {
    let n_kraus = 2 + (rng.random::<u32>() % 2) as usize;
    let dim_out = match rng.random::<u32>() % 3 {
        0 => n,
        1 => n + 1,
        _ => (n - 1).max(2),
    };
    random_kraus_rng(n, dim_out, n_kraus, rng)
}

/// Full depolarization onto the maximally mixed state, from the n² Weyl
/// shift/clock unitaries scaled by 1/n.
pub fn depolarizing_map(n: usize) -> KrausMap {
    let omega = 2.0 * std::f64::consts::PI / n as f64;
    let shift = RawMatrix::from_fn(n, n, |i, j| {
        if i == (j + 1) % n {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    let clock = RawMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::from_polar(1.0, omega * i as f64)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    let scale = Complex::new(1.0 / n as f64, 0.0);
    let mut ops = Vec::with_capacity(n * n);
    let mut xa = RawMatrix::identity(n, n);
    for _ in 0..n {
        let mut xz = xa.clone();
        for _ in 0..n {
            ops.push(&xz * scale);
            xz *= &clock;
        }
        xa = &shift * xa;
    }
    KrausMap::new(ops).expect("Weyl set is complete")
}

/// Outcome of one monotonicity trial.
#[derive(Debug, Clone, Copy)]
pub struct TrialOutcome {
    pub margin: f64,
    pub floored: bool,
}

/// Margin `G(ρ; v, v) − G(Φρ; Φv, Φv)` of the metric contraction inequality.
pub fn metric_monotonicity_trial(
    f: &MonotoneFunction,
    phi: &KrausMap,
    rho: &DensityMatrix,
    v: &TangentVector,
) -> Result<TrialOutcome> {
    let before = petz_metric(f, rho, v, v)?;
    let (sigma, floored) = push_state(phi, rho)?;
    let w = push_tangent(phi, v)?;
    let after = petz_metric(f, &sigma, &w, &w)?;
    Ok(TrialOutcome {
        margin: before - after,
        floored,
    })
}

/// Margin `S(ρ, σ) − S(Φρ, Φσ)` of the divergence contraction inequality.
pub fn divergence_monotonicity_trial(
    spec: &DivergenceSpec,
    phi: &KrausMap,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<TrialOutcome> {
    let before = spec.eval(rho, sigma)?;
    let (rho_out, f1) = push_state(phi, rho)?;
    let (sigma_out, f2) = push_state(phi, sigma)?;
    let after = spec.eval(&rho_out, &sigma_out)?;
    Ok(TrialOutcome {
        margin: before - after,
        floored: f1 || f2,
    })
}
