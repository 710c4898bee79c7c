use thiserror::Error;

/// Errors for state construction and geometric computations.
#[derive(Debug, Error)]
pub enum QigError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix shape is not {0}x{0}")]
    NotSquare(usize),

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not traceless (trace {0:.3e})")]
    NotTraceless(f64),

    #[error("trace is not 1 (got {0})")]
    TraceNotOne(f64),

    #[error("state is not faithful (min eigenvalue {0:.3e})")]
    NotFaithful(f64),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("determinant is not 1 (residual {0:.3e})")]
    NotSpecialUnitary(f64),

    #[error("probability vector invalid: {0}")]
    InvalidProbability(String),

    #[error("eigenvalue {0} lies outside the domain of the scalar function")]
    OutsideDomain(f64),

    #[error("index bounds violated: {0}")]
    IndexBounds(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("function flag violated: {0}")]
    FlagViolation(String),

    #[error("curve left the faithful region at s={0}")]
    BoundaryBreach(f64),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("kraus completeness violated (residual {0:.3e})")]
    IncompleteKraus(f64),

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, QigError>;
