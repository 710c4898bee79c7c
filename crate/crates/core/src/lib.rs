//! # qig
//!
//! Riemannian geometry of finite-dimensional quantum state spaces: the
//! monotone (Petz) family of metrics on faithful density matrices, quantum
//! divergences, the divergence → metric extraction algorithm, and the
//! universal geodesics shared by every member of the family.
//!
//! The library works throughout with the factorization of a faithful state
//! ρ = U diag(p) U† into a special unitary and a probability vector, under
//! which every monotone metric splits into the classical Fisher-Rao metric
//! on the simplex plus a p-weighted quadratic form on su(n).
//!
//! Module map:
//!
//! * [`matcore`]: complex-matrix kernel. Hermitian algebra, spectral
//!   decomposition, generalized Pauli basis of su(n).
//! * [`states`]: density matrices, tangent vectors, the (U, p)
//!   factorization and its tangent map, seeded random sampling.
//! * [`identifications`]: the Jordan, square-root, and exponential
//!   identifications of tangent vectors and their gradient fields.
//! * [`metrics`]: the monotone family, closed-form BH/WY/BKM evaluations,
//!   Fisher-Rao, and the pulled-back block decomposition.
//! * [`divergences`]: relative g-entropies, relative entropy, fidelity,
//!   α-z Rényi family, classical divergences.
//! * [`extraction`]: second-derivative extraction of tensors from
//!   two-point functions and the f↔g correspondence.
//! * [`geodesics`]: Fisher-Rao geodesics and the universal geodesics of
//!   the whole monotone family, with a first-variation certificate.
//! * [`channels`]: Kraus maps and randomized monotonicity trials.
//! * [`suites`]: deterministic verification suites over all of the above.
//! * [`json`]: wire formats used by the command-line driver.

pub mod channels;
pub mod divergences;
pub mod error;
pub mod extraction;
pub mod geodesics;
pub mod identifications;
pub mod json;
pub mod matcore;
pub mod metrics;
pub mod states;
pub mod suites;

pub use error::{QigError, Result};
pub use identifications::MetricFamily;
pub use matcore::{CMatrix, Complex64, Hermitian};
pub use states::{DensityMatrix, ProbVector, TangentVector, UnfoldedPoint, UnfoldedTangent};
