//! Closed-form Fisher-Rao geodesics on the simplex, their unitary-conjugated
//! images on the state manifold, and a discrete first-variation certificate
//! that such a curve is geodesic for every monotone metric at once.
//!
//! Mapping p ↦ √p sends the simplex onto the unit sphere and Fisher-Rao onto
//! the round metric, so the geodesic through p with zero-sum velocity a is
//!
//! ```text
//! p_j(t) = cos²(θ) p_j + sin²(θ) a_j² / (‖a‖² p_j) + sin(2θ) a_j / ‖a‖,
//! θ = t ‖a‖ / 2,   ‖a‖² = Σ a_j² / p_j.
//! ```
//!
//! Conjugating by a fixed unitary keeps the whole curve in one eigenbasis;
//! there the velocity commutes with the state, every monotone metric reduces
//! to Fisher-Rao, and the curve is a geodesic for each of them.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{QigError, Result};
use crate::metrics::{fisher_rao, petz_metric, MonotoneFunction};
use crate::states::{
    fold, random_unfolded_tangent_rng, DensityMatrix, ProbVector, TangentVector, UnfoldedPoint,
};

/// Positivity floor for points along a geodesic.
const CURVE_FLOOR: f64 = 1e-8;

/// Fisher-Rao geodesic data: base point, zero-sum velocity, FR speed, and
/// the largest |t| keeping every component above the floor.
#[derive(Debug, Clone)]
pub struct FRGeodesic {
    p0: ProbVector,
    a: Vec<f64>,
    norm: f64,
    t_max: f64,
}

impl FRGeodesic {
    pub fn new(p0: ProbVector, a: Vec<f64>) -> Result<Self> {
        if p0.len() != a.len() {
            return Err(QigError::DimensionMismatch(p0.len(), a.len()));
        }
        let asum: f64 = a.iter().sum();
        if asum.abs() > 1e-12 {
            return Err(QigError::InvalidParameter(format!(
                "velocity sums to {asum}, not 0"
            )));
        }
        let norm_sq: f64 = a
            .iter()
            .zip(p0.as_slice())
            .map(|(aj, pj)| aj * aj / pj)
            .sum();
        if norm_sq == 0.0 {
            return Err(QigError::InvalidParameter(
                "velocity must be nonzero".into(),
            ));
        }
        let norm = norm_sq.sqrt();
        let mut g = Self {
            p0,
            a,
            norm,
            t_max: 0.0,
        };
        let forward = g.boundary_time(1.0);
        let backward = g.boundary_time(-1.0);
        g.t_max = forward.min(backward);
        Ok(g)
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn base(&self) -> &ProbVector {
        &self.p0
    }

    fn point_unchecked(&self, t: f64) -> Vec<f64> {
        let theta = 0.5 * t * self.norm;
        let (c2, s2) = (theta.cos().powi(2), theta.sin().powi(2));
        let cross = (t * self.norm).sin() / self.norm;
        self.p0
            .as_slice()
            .iter()
            .zip(&self.a)
            .map(|(&pj, &aj)| c2 * pj + s2 * aj * aj / (self.norm * self.norm * pj) + cross * aj)
            .collect()
    }

    /// First boundary contact in the given time direction. On the sphere the
    /// j-th coordinate is `√p_j(t) = R_j sin(θ + φ_j)` with θ = t‖a‖/2, so
    /// `p_j < floor` starts at the exact angle `kπ − φ_j − asin(√floor/R_j)`.
    fn boundary_time(&self, direction: f64) -> f64 {
        let omega = self.norm;
        let sqrt_floor = CURVE_FLOOR.sqrt();
        let mut theta_min = f64::MAX;
        for j in 0..self.p0.len() {
            let x0 = self.p0.get(j).sqrt();
            let u = direction * self.a[j] / (x0 * omega);
            let r = (x0 * x0 + u * u).sqrt();
            let phi = x0.atan2(u);
            let delta = (sqrt_floor / r).min(1.0).asin();
            // x0 > 0 puts φ in (0, π), so the first violation angle is
            // positive for k = ceil((φ + δ)/π)
            let k = ((phi + delta) / std::f64::consts::PI).ceil().max(1.0);
            let theta_j = k * std::f64::consts::PI - phi - delta;
            theta_min = theta_min.min(theta_j);
        }
        (2.0 / omega) * theta_min
    }

    /// Point at parameter t; errors outside (−t_max, t_max).
    pub fn point(&self, t: f64) -> Result<Vec<f64>> {
        if t.abs() >= self.t_max {
            return Err(QigError::BoundaryBreach(t));
        }
        Ok(self.point_unchecked(t))
    }

    /// Analytic velocity ṗ(t); zero-sum for all t.
    pub fn velocity(&self, t: f64) -> Vec<f64> {
        let two_theta = t * self.norm;
        let half_sin = 0.5 * two_theta.sin() * self.norm;
        let cos = two_theta.cos();
        self.p0
            .as_slice()
            .iter()
            .zip(&self.a)
            .map(|(&pj, &aj)| half_sin * (aj * aj / (self.norm * self.norm * pj) - pj) + cos * aj)
            .collect()
    }
}

/// Point of the Fisher-Rao geodesic from p0 with velocity a at time t.
pub fn fr_geodesic(p0: &ProbVector, a: &[f64], t: f64) -> Result<Vec<f64>> {
    FRGeodesic::new(p0.clone(), a.to_vec())?.point(t)
}

/// The same curve conjugated into the eigenbasis of an unfolded point:
/// `U diag(p(t)) U†`.
pub fn universal_geodesic(x: &UnfoldedPoint, a: &[f64], t: f64) -> Result<DensityMatrix> {
    let geo = FRGeodesic::new(x.probabilities().clone(), a.to_vec())?;
    let p = ProbVector::new(geo.point(t)?).map_err(|_| QigError::BoundaryBreach(t))?;
    fold(&UnfoldedPoint::new(x.unitary().clone(), p)?)
}

/// Outcome of a first-variation trial on a discretized curve.
#[derive(Debug, Clone)]
pub struct VariationReport {
    /// Discrete energy Σ G_f(γ̇, γ̇) Δt of the unperturbed curve.
    pub energy: f64,
    /// Largest |dE/dε| over the sampled variation directions.
    pub residual: f64,
    pub nodes: usize,
    pub variations: usize,
}

/// cos² bump supported on |t − center| < halfwidth, C¹ at the edges.
fn bump(t: f64, center: f64, halfwidth: f64) -> f64 {
    let u = (t - center) / halfwidth;
    if u.abs() >= 1.0 {
        0.0
    } else {
        let c = (0.5 * std::f64::consts::PI * u).cos();
        c * c
    }
}

struct CurveSetup {
    points: Vec<UnfoldedPoint>,
    times: Vec<f64>,
    dt: f64,
}

fn sample_curve(
    x: &UnfoldedPoint,
    geo: &FRGeodesic,
    span: f64,
    dt: f64,
    bend: Option<(f64, &[f64])>,
) -> Result<CurveSetup> {
    if span.is_nan() || dt.is_nan() || span <= 0.0 || dt <= 0.0 || dt >= span {
        return Err(QigError::InvalidParameter(format!(
            "bad discretization: span {span}, dt {dt}"
        )));
    }
    if span >= geo.t_max() {
        return Err(QigError::BoundaryBreach(span));
    }
    let nodes = (span / dt).round() as usize;
    let dt = span / nodes as f64;
    let mut points = Vec::with_capacity(nodes + 1);
    let mut times = Vec::with_capacity(nodes + 1);
    for i in 0..=nodes {
        let t = dt * i as f64;
        let mut p = geo.point_unchecked(t);
        if let Some((amplitude, dir)) = bend {
            let s = (std::f64::consts::PI * t / span).sin();
            for (pj, ej) in p.iter_mut().zip(dir) {
                *pj += amplitude * s * ej;
            }
        }
        if p.iter().any(|&v| v <= CURVE_FLOOR) {
            return Err(QigError::BoundaryBreach(t));
        }
        let sum: f64 = p.iter().sum();
        for v in &mut p {
            *v /= sum;
        }
        points.push(UnfoldedPoint::new(
            x.unitary().clone(),
            ProbVector::new(p)?,
        )?);
        times.push(t);
    }
    Ok(CurveSetup { points, times, dt })
}

/// Discrete energy of a node sequence under G_f: midpoint states with chord
/// velocities.
fn discrete_energy(f: &MonotoneFunction, nodes: &[DensityMatrix], dt: f64) -> Result<f64> {
    let mut acc = 0.0;
    for w in nodes.windows(2) {
        let mid = DensityMatrix::new(w[0].hermitian().add(w[1].hermitian()).scale(0.5))?;
        let vel = TangentVector::project(w[1].hermitian().sub(w[0].hermitian()).scale(1.0 / dt));
        acc += petz_metric(f, &mid, &vel, &vel)? * dt;
    }
    Ok(acc)
}

fn residual_for_setup(
    f: &MonotoneFunction,
    setup: &CurveSetup,
    span: f64,
    seed: u64,
) -> Result<VariationReport> {
    let n = setup.points[0].dim();
    let base_nodes: Vec<DensityMatrix> =
        setup.points.iter().map(fold).collect::<Result<Vec<_>>>()?;
    let energy = discrete_energy(f, &base_nodes, setup.dt)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let variations = 16;
    let halfwidth = 0.1 * span;
    let eps = 1e-4;
    let mut residual = 0.0f64;
    for _ in 0..variations {
        let dir = random_unfolded_tangent_rng(n, &mut rng).with_max_component(1.0);
        let center = halfwidth + rng.random::<f64>() * (span - 2.0 * halfwidth);
        let perturbed_energy = |sign: f64| -> Result<f64> {
            let nodes: Vec<DensityMatrix> = setup
                .points
                .iter()
                .zip(&setup.times)
                .map(|(pt, &t)| {
                    let phi = bump(t, center, halfwidth);
                    fold(&pt.push(&dir, sign * eps * phi)?)
                })
                .collect::<Result<Vec<_>>>()?;
            discrete_energy(f, &nodes, setup.dt)
        };
        let first_variation = (perturbed_energy(1.0)? - perturbed_energy(-1.0)?) / (2.0 * eps);
        residual = residual.max(first_variation.abs());
    }
    Ok(VariationReport {
        energy,
        residual,
        nodes: setup.points.len() - 1,
        variations,
    })
}

/// First-variation certificate for the universal geodesic from x with
/// velocity a over [0, span], discretized at step dt. The curve is perturbed
/// by 16 seeded random directions under compactly supported bumps of width
/// 0.2·span; for a genuine geodesic the largest |dE/dε| stays below
/// 1e-4 × energy once dt is small enough.
pub fn geodesic_residual(
    f: &MonotoneFunction,
    x: &UnfoldedPoint,
    a: &[f64],
    span: f64,
    dt: f64,
    seed: u64,
) -> Result<VariationReport> {
    let geo = FRGeodesic::new(x.probabilities().clone(), a.to_vec())?;
    let setup = sample_curve(x, &geo, span, dt, None)?;
    residual_for_setup(f, &setup, span, seed)
}

/// Negative control: the same test on a deliberately bent curve, a sin bump
/// of the given amplitude added to p(t) along a fixed zero-sum direction.
pub fn geodesic_residual_bent(
    f: &MonotoneFunction,
    x: &UnfoldedPoint,
    a: &[f64],
    span: f64,
    dt: f64,
    seed: u64,
    amplitude: f64,
) -> Result<VariationReport> {
    let n = x.dim();
    let mut dir = vec![0.0; n];
    dir[0] = std::f64::consts::FRAC_1_SQRT_2;
    dir[1] = -std::f64::consts::FRAC_1_SQRT_2;
    let geo = FRGeodesic::new(x.probabilities().clone(), a.to_vec())?;
    let setup = sample_curve(x, &geo, span, dt, Some((amplitude, &dir)))?;
    residual_for_setup(f, &setup, span, seed)
}

/// Squared FR speed of the curve at t; constant and equal to ‖a‖² along a
/// geodesic.
pub fn fr_speed_squared(geo: &FRGeodesic, t: f64) -> Result<f64> {
    let p = ProbVector::new(geo.point(t)?)?;
    let v = geo.velocity(t);
    fisher_rao(&p, &v, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::CMatrix;
    use crate::states::random_unitary;
    use approx::assert_relative_eq;

    fn qubit_geo() -> FRGeodesic {
        FRGeodesic::new(ProbVector::new(vec![0.5, 0.5]).unwrap(), vec![0.5, -0.5]).unwrap()
    }

    #[test]
    fn qubit_closed_form() {
        // ‖a‖ = 1 and p(t) = (0.5 + 0.5 sin t, 0.5 − 0.5 sin t)
        let g = qubit_geo();
        assert_relative_eq!(g.norm(), 1.0, epsilon = 1e-15);
        for t in [-1.2, -0.3, 0.0, 0.7, 1.5] {
            let p = g.point(t).unwrap();
            assert_relative_eq!(p[0], 0.5 + 0.5 * t.sin(), epsilon = 1e-12);
            assert_relative_eq!(p[1], 0.5 - 0.5 * t.sin(), epsilon = 1e-12);
        }
        let sixth = g.point(std::f64::consts::FRAC_PI_6).unwrap();
        assert_relative_eq!(sixth[0], 0.75, epsilon = 1e-12);
        assert_relative_eq!(sixth[1], 0.25, epsilon = 1e-12);
    }

    #[test]
    fn normalization_preserved_along_curve() {
        let g = FRGeodesic::new(
            ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap(),
            vec![0.2, -0.35, 0.15],
        )
        .unwrap();
        for i in 0..100 {
            let t = g.t_max() * (i as f64 / 100.0 * 1.98 - 0.99);
            let p = g.point(t).unwrap();
            let sum: f64 = p.iter().sum();
            assert!((sum - 1.0).abs() < 1e-13, "sum {sum} at t={t}");
            assert!(p.iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn time_symmetry() {
        let p0 = ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let a = vec![0.1, -0.25, 0.15];
        let neg_a: Vec<f64> = a.iter().map(|x| -x).collect();
        let g1 = FRGeodesic::new(p0.clone(), a).unwrap();
        let g2 = FRGeodesic::new(p0, neg_a).unwrap();
        for t in [0.1, 0.4, 0.9] {
            let x = g1.point(-t).unwrap();
            let y = g2.point(t).unwrap();
            for (u, v) in x.iter().zip(&y) {
                assert_relative_eq!(u, v, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn boundary_time_respects_floor() {
        // qubit curve reaches (1, 0) at t = π/2
        let g = qubit_geo();
        assert!(g.t_max() < std::f64::consts::FRAC_PI_2);
        assert!(g.t_max() > std::f64::consts::FRAC_PI_2 - 1e-3);
        assert!(g.point(g.t_max() + 1e-6).is_err());
        let p = g.point(g.t_max() - 1e-6).unwrap();
        assert!(p.iter().all(|&x| x >= CURVE_FLOOR * 0.99));
    }

    #[test]
    fn sphere_pullback_angle_additivity() {
        // √p(t) traces a great circle: the angle from √p(0) grows linearly
        let g = FRGeodesic::new(
            ProbVector::new(vec![0.25, 0.35, 0.4]).unwrap(),
            vec![0.3, -0.1, -0.2],
        )
        .unwrap();
        let x0: Vec<f64> = g.base().as_slice().iter().map(|p| p.sqrt()).collect();
        for t in [0.05, 0.2, 0.45] {
            let xt: Vec<f64> = g.point(t).unwrap().iter().map(|p| p.sqrt()).collect();
            let dot: f64 = x0.iter().zip(&xt).map(|(a, b)| a * b).sum();
            let angle = dot.clamp(-1.0, 1.0).acos();
            assert!(
                (angle - 0.5 * t * g.norm()).abs() < 1e-10,
                "angle {angle} vs {}",
                0.5 * t * g.norm()
            );
        }
    }

    #[test]
    fn constant_speed_under_every_builtin_metric() {
        use crate::identifications::MetricFamily;
        use crate::metrics::builtin_f;
        let u = random_unitary(3, 15);
        let p = ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let x = UnfoldedPoint::new(u, p.clone()).unwrap();
        let a = vec![0.15, -0.25, 0.1];
        let geo = FRGeodesic::new(p, a.clone()).unwrap();
        let delta = 1e-5;
        for kind in MetricFamily::ALL {
            let f = builtin_f(kind);
            let mut speeds = Vec::new();
            for t in [0.1, 0.35, 0.6] {
                let plus = universal_geodesic(&x, &a, t + delta).unwrap();
                let minus = universal_geodesic(&x, &a, t - delta).unwrap();
                let vel = TangentVector::project(
                    plus.hermitian().sub(minus.hermitian()).scale(0.5 / delta),
                );
                let state = universal_geodesic(&x, &a, t).unwrap();
                speeds.push(petz_metric(&f, &state, &vel, &vel).unwrap());
            }
            let expect = geo.norm() * geo.norm();
            for s in &speeds {
                assert!(
                    (s - expect).abs() < 1e-6 * expect,
                    "{}: speed² {s} vs {expect}",
                    f.name()
                );
            }
        }
    }

    #[test]
    fn analytic_speed_is_constant() {
        let g = FRGeodesic::new(
            ProbVector::new(vec![0.25, 0.35, 0.4]).unwrap(),
            vec![0.3, -0.1, -0.2],
        )
        .unwrap();
        let expect = g.norm() * g.norm();
        for t in [-0.4, 0.0, 0.3, 0.8] {
            assert_relative_eq!(fr_speed_squared(&g, t).unwrap(), expect, epsilon = 1e-11);
        }
    }

    #[test]
    fn universal_geodesic_reduces_to_fold_at_zero() {
        let u = random_unitary(2, 9);
        let p = ProbVector::new(vec![0.35, 0.65]).unwrap();
        let x = UnfoldedPoint::new(u, p).unwrap();
        let rho = universal_geodesic(&x, &[0.2, -0.2], 0.0).unwrap();
        let folded = fold(&x).unwrap();
        assert!(rho.hermitian().max_abs_diff(folded.hermitian()) < 1e-13);
    }

    #[test]
    fn commuting_family_along_identity_frame() {
        let x = UnfoldedPoint::new(
            CMatrix::identity(3),
            ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap(),
        )
        .unwrap();
        let a = [0.1, -0.3, 0.2];
        let r1 = universal_geodesic(&x, &a, 0.2).unwrap();
        let r2 = universal_geodesic(&x, &a, 0.5).unwrap();
        let comm = r1
            .matrix()
            .mul(r2.matrix())
            .sub(&r2.matrix().mul(r1.matrix()));
        assert!(comm.max_abs() < 1e-14);
    }

    #[test]
    fn zero_velocity_rejected() {
        let p = ProbVector::new(vec![0.5, 0.5]).unwrap();
        assert!(FRGeodesic::new(p.clone(), vec![0.0, 0.0]).is_err());
        assert!(FRGeodesic::new(p, vec![0.5, 0.5]).is_err());
    }
}
