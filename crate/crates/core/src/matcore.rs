//! Dense complex-matrix kernel: Hermitian algebra, spectral decomposition,
//! Hilbert-Schmidt inner product, anticommutator superoperators, and the
//! generalized Pauli basis of su(n).
//!
//! Everything here is a pure function on immutable values; all types are
//! `Send + Sync` and safe to share across threads.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{QigError, Result};

pub type Complex64 = Complex<f64>;

/// Raw dense complex matrix. Rectangular shapes are allowed here; the square
/// invariant lives in [`CMatrix`].
pub type RawMatrix = DMatrix<Complex64>;

/// Tolerance for Hermiticity at construction.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance for linear-solve and reconstruction residuals.
pub const RESIDUAL_TOL: f64 = 1e-11;

pub(crate) const C_ZERO: Complex64 = Complex { re: 0.0, im: 0.0 };
pub(crate) const C_ONE: Complex64 = Complex { re: 1.0, im: 0.0 };

/// Square complex matrix of dimension n >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    m: RawMatrix,
}

impl CMatrix {
    /// Build from row-major entries; errors unless `entries.len() == dim * dim`.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(QigError::NotSquare(dim));
        }
        Ok(Self {
            m: RawMatrix::from_row_iterator(dim, dim, entries),
        })
    }

    /// Wrap an existing square matrix.
    pub fn from_raw(m: RawMatrix) -> Result<Self> {
        if m.nrows() == 0 || m.nrows() != m.ncols() {
            return Err(QigError::NotSquare(m.nrows()));
        }
        Ok(Self { m })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Self {
            m: RawMatrix::from_fn(dim, dim, f),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: RawMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: RawMatrix::identity(dim, dim),
        }
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diagonal(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| {
            if i == j {
                Complex::new(d[i], 0.0)
            } else {
                C_ZERO
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.m[(i, j)] = v;
    }

    pub fn raw(&self) -> &RawMatrix {
        &self.m
    }

    pub fn adjoint(&self) -> CMatrix {
        Self {
            m: self.m.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.m.clone().lu().determinant()
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        Self { m: &self.m * c }
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        Self {
            m: &self.m * &other.m,
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        Self {
            m: &self.m + &other.m,
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        Self {
            m: &self.m - &other.m,
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        (&self.m - &other.m)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Max-entry deviation of `U U†` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        let uu = &self.m * self.m.adjoint();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { C_ONE } else { C_ZERO };
                worst = worst.max((uu[(i, j)] - expect).norm());
            }
        }
        worst
    }
}

/// Self-adjoint matrix. Construction symmetrizes exactly via `(a + a†)/2`
/// after rejecting inputs with asymmetry above [`HERMITICITY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct Hermitian {
    m: CMatrix,
}

impl Hermitian {
    pub fn new(a: CMatrix) -> Result<Self> {
        let asym = a.max_abs_diff(&a.adjoint());
        if asym > HERMITICITY_TOL {
            return Err(QigError::NotHermitian(asym));
        }
        Ok(Self::symmetrize(a))
    }

    /// Symmetrize without the asymmetry check. For internal constructions that
    /// are Hermitian up to rounding by design.
    pub(crate) fn symmetrize(a: CMatrix) -> Self {
        let m = a.add(&a.adjoint()).scale(Complex::new(0.5, 0.0));
        Self { m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: CMatrix::zeros(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim),
        }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        Self {
            m: CMatrix::from_real_diagonal(d),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m.get(i, j)
    }

    /// Trace; exactly real after symmetrization.
    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn scale(&self, c: f64) -> Hermitian {
        Self {
            m: self.m.scale(Complex::new(c, 0.0)),
        }
    }

    pub fn add(&self, other: &Hermitian) -> Hermitian {
        Self {
            m: self.m.add(&other.m),
        }
    }

    pub fn sub(&self, other: &Hermitian) -> Hermitian {
        Self {
            m: self.m.sub(&other.m),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.m.max_abs()
    }

    pub fn max_abs_diff(&self, other: &Hermitian) -> f64 {
        self.m.max_abs_diff(&other.m)
    }

    /// Hermitian part of `self * other`, i.e. the Jordan product
    /// `{a, b} = (ab + ba)/2`.
    pub fn jordan_product(&self, other: &Hermitian) -> Hermitian {
        let ab = self.m.mul(&other.m);
        Hermitian::symmetrize(ab)
    }
}

/// Hilbert-Schmidt inner product `⟨a, b⟩ = Tr(a† b)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(QigError::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut acc = C_ZERO;
    for j in 0..a.dim() {
        for i in 0..a.dim() {
            acc += a.get(i, j).conj() * b.get(i, j);
        }
    }
    Ok(acc)
}

/// Eigen-decomposition of a Hermitian matrix: `a = U diag(λ) U†` with real
/// eigenvalues sorted ascending and the eigenvector columns permuted to match.
#[derive(Debug, Clone)]
pub struct Spectral {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl Spectral {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Reassemble `U diag(φ(λ)) U†`.
    pub fn assemble(&self, phi: impl Fn(f64) -> f64) -> Hermitian {
        let n = self.dim();
        let u = self.eigenvectors.raw();
        let mut scaled = u.clone();
        for j in 0..n {
            let c = Complex::new(phi(self.eigenvalues[j]), 0.0);
            for i in 0..n {
                scaled[(i, j)] *= c;
            }
        }
        let rec = scaled * u.adjoint();
        Hermitian::symmetrize(CMatrix { m: rec })
    }

    /// Conjugate `x` into the eigenbasis: `U† x U`.
    pub fn to_eigenbasis(&self, x: &CMatrix) -> CMatrix {
        let u = self.eigenvectors.raw();
        CMatrix {
            m: u.adjoint() * x.raw() * u,
        }
    }

    /// Conjugate `x` back from the eigenbasis: `U x U†`.
    pub fn from_eigenbasis(&self, x: &CMatrix) -> CMatrix {
        let u = self.eigenvectors.raw();
        CMatrix {
            m: u * x.raw() * u.adjoint(),
        }
    }
}

/// Spectral theorem for self-adjoint matrices, eigenvalues ascending.
///
/// Within a degenerate eigenvalue block the eigenvector basis is whatever the
/// solver returns; downstream operations must be invariant under intra-block
/// rotations.
pub fn spectral_decompose(a: &Hermitian) -> Spectral {
    let eig = a.matrix().raw().clone().symmetric_eigen();
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = RawMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Spectral {
        eigenvalues,
        eigenvectors: CMatrix { m: vectors },
    }
}

/// Apply a real scalar function to a Hermitian matrix through its spectrum:
/// `U φ(Λ) U†`. Errors if φ produces a non-finite value on any eigenvalue.
pub fn matrix_function(a: &Hermitian, phi: impl Fn(f64) -> f64) -> Result<Hermitian> {
    let spec = spectral_decompose(a);
    for &lam in &spec.eigenvalues {
        if !phi(lam).is_finite() {
            return Err(QigError::OutsideDomain(lam));
        }
    }
    Ok(spec.assemble(phi))
}

/// Unitary `exp(i s h)` for Hermitian `h`, via the spectral theorem.
pub fn unitary_from_hermitian(h: &Hermitian, s: f64) -> CMatrix {
    let spec = spectral_decompose(h);
    let n = h.dim();
    let u = spec.eigenvectors.raw();
    let mut scaled = u.clone();
    for j in 0..n {
        let phase = Complex::from_polar(1.0, s * spec.eigenvalues[j]);
        for i in 0..n {
            scaled[(i, j)] *= phase;
        }
    }
    CMatrix {
        m: scaled * u.adjoint(),
    }
}

/// Anticommutator superoperator `A_ρ(x) = (ρx + xρ)/2`. In the eigenbasis of
/// ρ, entry (j,k) is scaled by `(p_j + p_k)/2`.
pub fn anticomm_super(rho: &Hermitian, x: &Hermitian) -> Result<Hermitian> {
    if rho.dim() != x.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), x.dim()));
    }
    Ok(rho.jordan_product(x))
}

/// Solve `A_ρ(result) = v` by entrywise division by `(p_j + p_k)/2` in the
/// eigenbasis of ρ. Errors when ρ is not strictly positive.
pub fn anticomm_solve(rho: &Hermitian, v: &Hermitian) -> Result<Hermitian> {
    if rho.dim() != v.dim() {
        return Err(QigError::DimensionMismatch(rho.dim(), v.dim()));
    }
    let spec = spectral_decompose(rho);
    let floor = crate::states::FAITHFULNESS_FLOOR;
    if spec.eigenvalues[0] <= floor {
        return Err(QigError::NotFaithful(spec.eigenvalues[0]));
    }
    let n = rho.dim();
    let vt = spec.to_eigenbasis(v.matrix());
    let solved = CMatrix::from_fn(n, |i, j| {
        vt.get(i, j) / Complex::new(0.5 * (spec.eigenvalues[i] + spec.eigenvalues[j]), 0.0)
    });
    Ok(Hermitian::symmetrize(spec.from_eigenbasis(&solved)))
}

/// Logarithmic mean `(x - y)/(ln x - ln y)` with the limit `x` on the
/// diagonal, computed through `artanh` so near-degenerate arguments lose no
/// precision.
pub fn log_mean(x: f64, y: f64) -> f64 {
    debug_assert!(x > 0.0 && y > 0.0);
    // order the arguments so the result is bitwise symmetric
    let (x, y) = if x >= y { (x, y) } else { (y, x) };
    let s = x + y;
    let u = (x - y) / s;
    // artanh(u)/u, series below 1e-5 where the direct form would cancel
    let ratio = if u.abs() < 1e-5 {
        let u2 = u * u;
        1.0 + u2 / 3.0 + u2 * u2 / 5.0
    } else {
        0.5 * ((2.0 * u / (1.0 - u)).ln_1p()) / u
    };
    0.5 * s / ratio
}

/// Kinds of generalized Pauli matrices spanning su(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuKind {
    /// `τ¹_{jk} = |j⟩⟨k| + |k⟩⟨j|`
    Tau1,
    /// `τ²_{jk} = i(|j⟩⟨k| − |k⟩⟨j|)`
    Tau2,
    /// `τ³_{l,l+1} = |l⟩⟨l| − |l+1⟩⟨l+1|`
    Tau3,
}

/// One traceless Hermitian basis element of su(n). Indices are zero-based
/// with `j < k`; `Tau3` elements pair adjacent levels, `k = j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuBasisElement {
    pub kind: SuKind,
    pub j: usize,
    pub k: usize,
    pub dim: usize,
}

impl SuBasisElement {
    pub fn matrix(&self) -> Hermitian {
        let mut m = CMatrix::zeros(self.dim);
        match self.kind {
            SuKind::Tau1 => {
                m.set(self.j, self.k, C_ONE);
                m.set(self.k, self.j, C_ONE);
            }
            SuKind::Tau2 => {
                m.set(self.j, self.k, Complex::new(0.0, 1.0));
                m.set(self.k, self.j, Complex::new(0.0, -1.0));
            }
            SuKind::Tau3 => {
                m.set(self.j, self.j, C_ONE);
                m.set(self.k, self.k, -C_ONE);
            }
        }
        Hermitian { m }
    }
}

/// Ordered basis of su(n): τ¹ pairs lexicographic, then τ² pairs
/// lexicographic, then τ³ over adjacent levels; n² − 1 elements in total.
/// For n = 2 this is exactly (σ₁, σ₂, σ₃).
pub fn su_basis(n: usize) -> Result<Vec<SuBasisElement>> {
    if n < 2 {
        return Err(QigError::IndexBounds(format!(
            "su basis needs n >= 2, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(n * n - 1);
    for kind in [SuKind::Tau1, SuKind::Tau2] {
        for j in 0..n {
            for k in (j + 1)..n {
                out.push(SuBasisElement { kind, j, k, dim: n });
            }
        }
    }
    for l in 0..(n - 1) {
        out.push(SuBasisElement {
            kind: SuKind::Tau3,
            j: l,
            k: l + 1,
            dim: n,
        });
    }
    Ok(out)
}

/// The Pauli matrices in the convention used by [`su_basis`] at n = 2.
pub fn pauli(which: usize) -> Hermitian {
    let basis = su_basis(2).expect("n = 2");
    basis[which - 1].matrix()
}
