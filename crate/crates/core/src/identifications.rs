//! Three identifications of tangent vectors at a faithful state by Hermitian
//! operator parameters, with their inverse solves and the associated gradient
//! and unitary vector fields.
//!
//! With `{x, y} = (xy + yx)/2`:
//!
//! * Jordan:       `J_ρ^a = {ρ, a} − Tr(aρ) ρ`
//! * square-root:  `S_ρ^a = {ρ, a} + √ρ a √ρ − 2 Tr(aρ) ρ`
//! * exponential:  `E_ρ^a = ∫₀¹ ρ^λ a ρ^{1−λ} dλ − Tr(aρ) ρ`
//!
//! Each map sends `a + cI` to the same tangent vector, so the solves fix the
//! gauge `Tr(ρ a) = 0` to obtain a canonical representative.

use num_complex::Complex;
use std::str::FromStr;

use crate::error::{QigError, Result};
use crate::matcore::{hs_inner, log_mean, matrix_function, spectral_decompose, CMatrix, Hermitian};
use crate::states::{DensityMatrix, TangentVector, FAITHFULNESS_FLOOR};

/// Operator parameter of an identification: Hermitian, not necessarily
/// traceless.
pub type ObservableParam = Hermitian;

/// The three named members of the monotone family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricFamily {
    BuresHelstrom,
    WignerYanase,
    BogoliubovKuboMori,
}

impl MetricFamily {
    pub const ALL: [MetricFamily; 3] = [
        MetricFamily::BuresHelstrom,
        MetricFamily::WignerYanase,
        MetricFamily::BogoliubovKuboMori,
    ];

    pub fn short_name(&self) -> &'static str {
        match self {
            MetricFamily::BuresHelstrom => "BH",
            MetricFamily::WignerYanase => "WY",
            MetricFamily::BogoliubovKuboMori => "BKM",
        }
    }
}

impl FromStr for MetricFamily {
    type Err = QigError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "BH" | "BURES-HELSTROM" | "BURES" => Ok(MetricFamily::BuresHelstrom),
            "WY" | "WIGNER-YANASE" => Ok(MetricFamily::WignerYanase),
            "BKM" | "BOGOLIUBOV-KUBO-MORI" => Ok(MetricFamily::BogoliubovKuboMori),
            other => Err(QigError::UnknownName(other.to_string())),
        }
    }
}

fn expectation(rho: &DensityMatrix, a: &Hermitian) -> Result<f64> {
    Ok(hs_inner(a.matrix(), rho.matrix())?.re)
}

/// `J_ρ^a = {ρ, a} − Tr(aρ) ρ`.
pub fn jordan_forward(rho: &DensityMatrix, a: &ObservableParam) -> Result<TangentVector> {
    let mean = expectation(rho, a)?;
    let jp = rho.hermitian().jordan_product(a);
    TangentVector::new(jp.sub(&rho.hermitian().scale(mean)))
}

/// `S_ρ^a = {ρ, a} + √ρ a √ρ − 2 Tr(aρ) ρ`.
pub fn sqrt_forward(rho: &DensityMatrix, a: &ObservableParam) -> Result<TangentVector> {
    let mean = expectation(rho, a)?;
    let sqrt_rho = matrix_function(rho.hermitian(), f64::sqrt)?;
    let middle = sqrt_rho.matrix().mul(a.matrix()).mul(sqrt_rho.matrix());
    let jp = rho.hermitian().jordan_product(a);
    let out = jp
        .add(&Hermitian::symmetrize(middle))
        .sub(&rho.hermitian().scale(2.0 * mean));
    TangentVector::new(out)
}

/// `E_ρ^a = ∫₀¹ ρ^λ a ρ^{1−λ} dλ − Tr(aρ) ρ`; the integral acts entrywise in
/// the eigenbasis as the logarithmic mean of the eigenvalue pair.
pub fn exp_forward(rho: &DensityMatrix, a: &ObservableParam) -> Result<TangentVector> {
    if rho.dim() != a.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), a.dim()));
    }
    let mean = expectation(rho, a)?;
    let spec = spectral_decompose(rho.hermitian());
    let n = rho.dim();
    let at = spec.to_eigenbasis(a.matrix());
    let scaled = CMatrix::from_fn(n, |i, j| {
        at.get(i, j) * Complex::new(log_mean(spec.eigenvalues[i], spec.eigenvalues[j]), 0.0)
    });
    let integral = Hermitian::symmetrize(spec.from_eigenbasis(&scaled));
    TangentVector::new(integral.sub(&rho.hermitian().scale(mean)))
}

fn solve_in_eigenbasis(
    rho: &DensityMatrix,
    v: &TangentVector,
    divisor: impl Fn(f64, f64) -> f64,
) -> Result<ObservableParam> {
    if rho.dim() != v.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), v.dim()));
    }
    let spec = spectral_decompose(rho.hermitian());
    if spec.eigenvalues[0] <= FAITHFULNESS_FLOOR {
        return Err(QigError::NotFaithful(spec.eigenvalues[0]));
    }
    let n = rho.dim();
    let vt = spec.to_eigenbasis(v.matrix());
    let solved = CMatrix::from_fn(n, |i, j| {
        vt.get(i, j) / Complex::new(divisor(spec.eigenvalues[i], spec.eigenvalues[j]), 0.0)
    });
    let a = Hermitian::symmetrize(spec.from_eigenbasis(&solved));
    // gauge Tr(ρ a) = 0; the entrywise solve already satisfies it up to dust
    let mean = expectation(rho, &a)?;
    Ok(a.sub(&Hermitian::identity(n).scale(mean)))
}

/// Inverse of [`jordan_forward`] under the gauge `Tr(ρ a) = 0`.
pub fn jordan_solve(rho: &DensityMatrix, v: &TangentVector) -> Result<ObservableParam> {
    solve_in_eigenbasis(rho, v, |x, y| 0.5 * (x + y))
}

/// Inverse of [`sqrt_forward`] under the gauge `Tr(ρ a) = 0`; the eigenbasis
/// divisor is `(√p_j + √p_k)² / 2`.
pub fn sqrt_solve(rho: &DensityMatrix, v: &TangentVector) -> Result<ObservableParam> {
    solve_in_eigenbasis(rho, v, |x, y| {
        let s = x.sqrt() + y.sqrt();
        0.5 * s * s
    })
}

/// Inverse of [`exp_forward`] under the gauge `Tr(ρ a) = 0`.
pub fn exp_solve(rho: &DensityMatrix, v: &TangentVector) -> Result<ObservableParam> {
    solve_in_eigenbasis(rho, v, log_mean)
}

/// Gradient vector field of the linear function `Tr(ρ a)` for the chosen
/// metric family, evaluated at ρ: `Y_a`, `W_a`, or `Z_a`.
pub fn gradient_field(
    kind: MetricFamily,
    rho: &DensityMatrix,
    a: &ObservableParam,
) -> Result<TangentVector> {
    match kind {
        MetricFamily::BuresHelstrom => jordan_forward(rho, a),
        MetricFamily::WignerYanase => sqrt_forward(rho, a),
        MetricFamily::BogoliubovKuboMori => exp_forward(rho, a),
    }
}

/// Fundamental vector field of the unitary action:
/// `X_b(ρ) = (i/2)(bρ − ρb)`. Vanishes exactly when `[b, ρ] = 0`.
pub fn unitary_field(rho: &DensityMatrix, b: &Hermitian) -> Result<TangentVector> {
    if rho.dim() != b.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), b.dim()));
    }
    let comm = b
        .matrix()
        .mul(rho.matrix())
        .sub(&rho.matrix().mul(b.matrix()));
    let half_i = Complex::new(0.0, 0.5);
    TangentVector::new(Hermitian::symmetrize(comm.scale(half_i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::pauli;
    use crate::states::{random_density, random_hermitian_rng, random_tangent_rng};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rho_37() -> DensityMatrix {
        DensityMatrix::new(Hermitian::from_real_diagonal(&[0.3, 0.7])).unwrap()
    }

    #[test]
    fn jordan_of_identity_vanishes() {
        let rho = rho_37();
        let v = jordan_forward(&rho, &Hermitian::identity(2)).unwrap();
        assert!(v.hermitian().max_abs() < 1e-15);
    }

    #[test]
    fn jordan_entrywise_oracle_sigma1() {
        // entrywise in the eigenbasis: a_jk (p_j + p_k)/2, gauge term zero
        // because Tr(ρ σ₁) = 0; so J = σ₁ (0.3 + 0.7)/2 = σ₁/2
        let rho = rho_37();
        let s1 = pauli(1);
        let v = jordan_forward(&rho, &s1).unwrap();
        assert!(v.hermitian().max_abs_diff(&s1.scale(0.5)) < 1e-15);
    }

    #[test]
    fn jordan_commuting_arithmetic_oracle() {
        // a = diag(1, -1): {ρ,a} = diag(0.3, -0.7), Tr(aρ) = -0.4,
        // J = diag(0.3, -0.7) + 0.4 diag(0.3, 0.7) = diag(0.42, -0.42)
        let rho = rho_37();
        let a = Hermitian::from_real_diagonal(&[1.0, -1.0]);
        let v = jordan_forward(&rho, &a).unwrap();
        let expect = Hermitian::from_real_diagonal(&[0.42, -0.42]);
        assert!(v.hermitian().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn jordan_solve_inverts() {
        let rho = rho_37();
        // v = σ₁: entrywise divide by (p₁+p₂)/2 = 0.5 → a = 2σ₁ (gauge already 0)
        let s1 = pauli(1);
        let a = jordan_solve(&rho, &TangentVector::new(s1.clone()).unwrap()).unwrap();
        assert!(a.max_abs_diff(&s1.scale(2.0)) < 1e-13);
        // v = 0 → a = 0 under the gauge
        let z = jordan_solve(&rho, &TangentVector::zero(2)).unwrap();
        assert!(z.max_abs() < 1e-15);
    }

    #[test]
    fn sqrt_of_identity_vanishes() {
        let rho = rho_37();
        let v = sqrt_forward(&rho, &Hermitian::identity(2)).unwrap();
        assert!(v.hermitian().max_abs() < 1e-14);
    }

    #[test]
    fn sqrt_entrywise_oracle_sigma1() {
        // off-diagonal scaling (p₁+p₂)/2 + √(p₁p₂) = 0.5 + √0.21
        let rho = rho_37();
        let s1 = pauli(1);
        let v = sqrt_forward(&rho, &s1).unwrap();
        let c = 0.5 + 0.21f64.sqrt();
        assert!(v.hermitian().max_abs_diff(&s1.scale(c)) < 1e-14);
    }

    #[test]
    fn exp_entrywise_oracle_sigma1() {
        // off-diagonal scaling (0.7-0.3)/(ln 0.7 - ln 0.3)
        let rho = rho_37();
        let s1 = pauli(1);
        let v = exp_forward(&rho, &s1).unwrap();
        let c = 0.4 / (0.7f64 / 0.3).ln();
        assert!(v.hermitian().max_abs_diff(&s1.scale(c)) < 1e-14);
    }

    #[test]
    fn exp_of_identity_vanishes() {
        let rho = random_density(3, 4);
        let v = exp_forward(&rho, &Hermitian::identity(3)).unwrap();
        assert!(v.hermitian().max_abs() < 1e-13);
    }

    #[test]
    fn commuting_collapse() {
        // for [a, ρ] = 0 with Tr(ρa) = 0: J = E and S = 2J
        let rho = rho_37();
        let a = Hermitian::from_real_diagonal(&[1.4, -0.6]); // Tr(ρa) = 0
        let j = jordan_forward(&rho, &a).unwrap();
        let e = exp_forward(&rho, &a).unwrap();
        let s = sqrt_forward(&rho, &a).unwrap();
        assert!(j.hermitian().max_abs_diff(e.hermitian()) < 1e-14);
        assert!(s.hermitian().max_abs_diff(&j.hermitian().scale(2.0)) < 1e-14);
    }

    #[test]
    fn round_trips_random() {
        type Fwd = fn(&DensityMatrix, &ObservableParam) -> Result<TangentVector>;
        type Slv = fn(&DensityMatrix, &TangentVector) -> Result<ObservableParam>;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 2..=6usize {
            let rho = random_density(n, 200 + n as u64);
            let v = random_tangent_rng(n, &mut rng);
            let routes: [(Fwd, Slv); 3] = [
                (jordan_forward, jordan_solve),
                (sqrt_forward, sqrt_solve),
                (exp_forward, exp_solve),
            ];
            for (fwd, slv) in routes {
                let a = slv(&rho, &v).unwrap();
                let back = fwd(&rho, &a).unwrap();
                assert!(
                    back.hermitian().max_abs_diff(v.hermitian()) < 1e-10,
                    "round trip failed at n={n}"
                );
                // gauge representative
                assert!(hs_inner(a.matrix(), rho.matrix()).unwrap().re.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn solve_then_forward_fixed_gauge_consistency() {
        // forward(solve(forward(a_gauged))) = forward(a_gauged)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_density(3, 31);
        let raw = random_hermitian_rng(3, &mut rng);
        let mean = hs_inner(raw.matrix(), rho.matrix()).unwrap().re;
        let a = raw.sub(&Hermitian::identity(3).scale(mean));
        let v = sqrt_forward(&rho, &a).unwrap();
        let a2 = sqrt_solve(&rho, &v).unwrap();
        assert!(a.max_abs_diff(&a2) < 1e-10);
    }

    #[test]
    fn unitary_field_fixtures() {
        let rho = rho_37();
        // commuting b gives zero
        let z = unitary_field(&rho, &Hermitian::from_real_diagonal(&[2.0, 5.0])).unwrap();
        assert!(z.hermitian().max_abs() < 1e-15);
        // b = σ₁: (i/2)(σ₁ρ − ρσ₁) = 0.2 σ₂
        let v = unitary_field(&rho, &pauli(1)).unwrap();
        assert!(v.hermitian().max_abs_diff(&pauli(2).scale(0.2)) < 1e-15);
        assert!(v.hermitian().trace().abs() < 1e-15);
    }

    #[test]
    fn gradient_field_delegates() {
        let rho = random_density(3, 17);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_hermitian_rng(3, &mut rng);
        let y = gradient_field(MetricFamily::BuresHelstrom, &rho, &a).unwrap();
        let j = jordan_forward(&rho, &a).unwrap();
        assert!(y.hermitian().max_abs_diff(j.hermitian()) < 1e-15);
    }

    #[test]
    fn family_parsing() {
        assert_eq!(
            "bh".parse::<MetricFamily>().unwrap(),
            MetricFamily::BuresHelstrom
        );
        assert_eq!(
            "BKM".parse::<MetricFamily>().unwrap(),
            MetricFamily::BogoliubovKuboMori
        );
        assert!("xy".parse::<MetricFamily>().is_err());
    }
}
