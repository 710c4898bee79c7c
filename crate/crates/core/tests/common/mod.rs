//! Independent numerical oracles shared by the integration tests. Nothing
//! here reuses the closed-form implementation paths it is used to check.

use num_complex::Complex;
use qig::matcore::{matrix_function, spectral_decompose, CMatrix, Complex64, Hermitian};
use qig::states::DensityMatrix;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // P_n(x) and P_n'(x) via the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = pk;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Quadrature of `λ ↦ ρ^λ a ρ^{1−λ}` over [0, 1] with 64 Gauss-Legendre
/// points, entirely through matrix powers.
pub fn integral_rho_a_rho(rho: &DensityMatrix, a: &Hermitian) -> Hermitian {
    let (nodes, weights) = gauss_legendre(64);
    let n = rho.dim();
    let mut acc = CMatrix::zeros(n);
    for (x, w) in nodes.iter().zip(&weights) {
        let lam = 0.5 * (x + 1.0);
        let left = matrix_function(rho.hermitian(), |t| t.powf(lam)).unwrap();
        let right = matrix_function(rho.hermitian(), |t| t.powf(1.0 - lam)).unwrap();
        let term = left.matrix().mul(a.matrix()).mul(right.matrix());
        acc = acc.add(&term.scale(Complex::new(0.5 * w, 0.0)));
    }
    // the node set is symmetric about λ = 1/2, so the sum is Hermitian up
    // to rounding
    Hermitian::new(acc).expect("symmetric quadrature")
}

/// The relative g-entropy straight from its superoperator definition
/// `Tr(√ρ g(L_σ R_{ρ⁻¹}) √ρ)`: assemble the n²×n² matrix of L_σ R_{ρ⁻¹} in
/// the standard operator basis, take g of it spectrally, and pair with
/// vec(√ρ).
pub fn g_entropy_superoperator(
    g: impl Fn(f64) -> f64,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> f64 {
    let n = rho.dim();
    let rho_inv = matrix_function(rho.hermitian(), |x| 1.0 / x).unwrap();
    let idx = |a: usize, b: usize| a * n + b;
    // ⟨e_ab, σ e_cd ρ⁻¹⟩ = σ_ac (ρ⁻¹)_db; Hermitian on the HS space
    let mut k = CMatrix::zeros(n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = sigma.hermitian().get(a, c) * rho_inv.get(d, b);
                    k.set(idx(a, b), idx(c, d), v);
                }
            }
        }
    }
    let k = Hermitian::new(k).expect("L_σ R_{ρ⁻¹} is self-adjoint on HS space");
    let spec = spectral_decompose(&k);
    let sqrt_rho = matrix_function(rho.hermitian(), f64::sqrt).unwrap();
    let mut vec_sqrt = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in 0..n {
            vec_sqrt[idx(a, b)] = sqrt_rho.get(a, b);
        }
    }
    // ⟨vec, U g(Λ) U† vec⟩
    let u = spec.eigenvectors.raw();
    let mut acc = 0.0;
    for j in 0..n * n {
        let mut coeff = Complex64::new(0.0, 0.0);
        for i in 0..n * n {
            coeff += u[(i, j)].conj() * vec_sqrt[i];
        }
        acc += g(spec.eigenvalues[j]) * coeff.norm_sqr();
    }
    acc
}

/// RK4 integration of the Fisher-Rao geodesic equation
/// `p̈_j = ṗ_j²/(2p_j) − p_j ‖ṗ‖²_FR / 2` from (p₀, a).
pub fn fr_geodesic_rk4(p0: &[f64], a: &[f64], t: f64, steps: usize) -> Vec<f64> {
    let n = p0.len();
    let accel = |p: &[f64], v: &[f64]| -> Vec<f64> {
        let speed2: f64 = v.iter().zip(p).map(|(vj, pj)| vj * vj / pj).sum();
        (0..n)
            .map(|j| 0.5 * v[j] * v[j] / p[j] - 0.5 * p[j] * speed2)
            .collect()
    };
    let mut p = p0.to_vec();
    let mut v = a.to_vec();
    let h = t / steps as f64;
    for _ in 0..steps {
        let k1p: Vec<f64> = v.clone();
        let k1v = accel(&p, &v);
        let p2: Vec<f64> = p.iter().zip(&k1p).map(|(x, d)| x + 0.5 * h * d).collect();
        let v2: Vec<f64> = v.iter().zip(&k1v).map(|(x, d)| x + 0.5 * h * d).collect();
        let k2p = v2.clone();
        let k2v = accel(&p2, &v2);
        let p3: Vec<f64> = p.iter().zip(&k2p).map(|(x, d)| x + 0.5 * h * d).collect();
        let v3: Vec<f64> = v.iter().zip(&k2v).map(|(x, d)| x + 0.5 * h * d).collect();
        let k3p = v3.clone();
        let k3v = accel(&p3, &v3);
        let p4: Vec<f64> = p.iter().zip(&k3p).map(|(x, d)| x + h * d).collect();
        let v4: Vec<f64> = v.iter().zip(&k3v).map(|(x, d)| x + h * d).collect();
        let k4p = v4.clone();
        let k4v = accel(&p4, &v4);
        for j in 0..n {
            p[j] += h / 6.0 * (k1p[j] + 2.0 * k2p[j] + 2.0 * k3p[j] + k4p[j]);
            v[j] += h / 6.0 * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
        }
    }
    p
}
