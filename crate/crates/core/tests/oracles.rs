//! Dual-route checks: every closed-form evaluation is compared against an
//! independent oracle: quadrature for the λ-integrals, a literal
//! superoperator assembly for the relative g-entropies, and an ODE
//! integrator for the Fisher-Rao geodesics.

mod common;

use common::{fr_geodesic_rk4, g_entropy_superoperator, gauss_legendre, integral_rho_a_rho};
use qig::divergences::{builtin_g, g_entropy, vnu_entropy};
use qig::identifications::exp_forward;
use qig::matcore::hs_inner;
use qig::metrics::bkm_closed;
use qig::states::{random_density_rng, random_hermitian_rng, DensityMatrix, ProbVector};
use qig::{Hermitian, MetricFamily};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn gauss_legendre_self_check() {
    let (nodes, weights) = gauss_legendre(64);
    let total: f64 = weights.iter().sum();
    assert!((total - 2.0).abs() < 1e-13);
    let x2: f64 = nodes.iter().zip(&weights).map(|(x, w)| w * x * x).sum();
    assert!((x2 - 2.0 / 3.0).abs() < 1e-13);
    let x8: f64 = nodes.iter().zip(&weights).map(|(x, w)| w * x.powi(8)).sum();
    assert!((x8 - 2.0 / 9.0).abs() < 1e-13);
}

#[test]
fn exp_forward_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in [2usize, 3, 4] {
        let rho = random_density_rng(n, &mut rng);
        let a = random_hermitian_rng(n, &mut rng);
        let quad = integral_rho_a_rho(&rho, &a);
        let mean = hs_inner(a.matrix(), rho.matrix()).unwrap().re;
        let expect = quad.sub(&rho.hermitian().scale(mean));
        let got = exp_forward(&rho, &a).unwrap();
        assert!(
            got.hermitian().max_abs_diff(&expect) < 1e-9,
            "closed form vs quadrature at n={n}"
        );
    }
}

#[test]
fn exp_forward_fixture_from_quadrature() {
    // ρ = diag(0.3, 0.7), a = σ₁: the quadrature oracle reproduces the
    // logarithmic-mean factor 0.4 / ln(7/3)
    let rho = DensityMatrix::new(Hermitian::from_real_diagonal(&[0.3, 0.7])).unwrap();
    let s1 = qig::matcore::pauli(1);
    let quad = integral_rho_a_rho(&rho, &s1);
    let c = quad.get(0, 1).re;
    assert!((c - 0.4 / (0.7f64 / 0.3).ln()).abs() < 1e-12);
    let closed = exp_forward(&rho, &s1).unwrap();
    assert!((closed.hermitian().get(0, 1).re - c).abs() < 1e-12);
}

#[test]
fn bkm_closed_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for n in [2usize, 3, 4] {
        let rho = random_density_rng(n, &mut rng);
        let a = random_hermitian_rng(n, &mut rng);
        let b = random_hermitian_rng(n, &mut rng);
        let quad_integral = integral_rho_a_rho(&rho, &a);
        let t1 = quad_integral.matrix().mul(b.matrix()).trace().re;
        let ma = hs_inner(rho.matrix(), a.matrix()).unwrap().re;
        let mb = hs_inner(rho.matrix(), b.matrix()).unwrap().re;
        let oracle = t1 - ma * mb;
        let closed = bkm_closed(&rho, &a, &b).unwrap();
        assert!(
            (closed - oracle).abs() < 1e-9 * oracle.abs().max(1.0),
            "n={n}: closed {closed} vs quadrature {oracle}"
        );
    }
}

#[test]
fn g_entropy_eigen_sum_matches_superoperator_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for n in [2usize, 3, 4] {
        let rho = random_density_rng(n, &mut rng);
        let sigma = random_density_rng(n, &mut rng);
        for kind in MetricFamily::ALL {
            let g = builtin_g(kind);
            let fast = g_entropy(&g, &rho, &sigma).unwrap();
            let slow = g_entropy_superoperator(|x| g.eval(x), &rho, &sigma);
            assert!(
                (fast - slow).abs() < 1e-10 * fast.abs().max(1.0),
                "{} at n={n}: {fast} vs {slow}",
                g.name()
            );
        }
    }
}

#[test]
fn vnu_matches_superoperator_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let rho = random_density_rng(3, &mut rng);
    let sigma = random_density_rng(3, &mut rng);
    let direct = vnu_entropy(&rho, &sigma).unwrap();
    let via_super = g_entropy_superoperator(|x| -x.ln(), &rho, &sigma);
    assert!((direct - via_super).abs() < 1e-10 * direct.abs().max(1.0));
}

#[test]
fn fr_geodesic_matches_rk4_integrator() {
    let cases = [
        (vec![0.5, 0.5], vec![0.5, -0.5], 0.9),
        (vec![0.2, 0.3, 0.5], vec![0.2, -0.35, 0.15], 0.7),
        (vec![0.1, 0.2, 0.3, 0.4], vec![-0.05, 0.1, 0.05, -0.1], 1.1),
    ];
    for (p0, a, t) in cases {
        let closed =
            qig::geodesics::fr_geodesic(&ProbVector::new(p0.clone()).unwrap(), &a, t).unwrap();
        let integrated = fr_geodesic_rk4(&p0, &a, t, 4000);
        for (c, i) in closed.iter().zip(&integrated) {
            assert!(
                (c - i).abs() < 1e-8,
                "closed {c} vs integrated {i} at t={t}"
            );
        }
    }
}
