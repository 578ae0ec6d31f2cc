use thiserror::Error;

use crate::cohomology::CohomologyClass;

/// Every failure the library reports.
///
/// Mathematical negative results that callers usually want to inspect
/// (obstructed kernels, missing lifts) carry their certificate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("cochain degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("subspace is not an ideal: [e{element}, b{basis_vector}] leaves it")]
    NotAnIdeal { element: usize, basis_vector: usize },

    #[error("map is not a homomorphism on basis pair ({0}, {1})")]
    NotAHomomorphism(usize, usize),

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),

    #[error("invalid factor system: {condition} ({detail})")]
    InvalidFactorSystem {
        condition: String,
        detail: String,
        jacobi_triple: Option<(usize, usize, usize)>,
    },

    #[error("no lift: {0}")]
    NoLift(String),

    #[error("obstructed: the obstruction class is nonzero")]
    Obstructed(Box<CohomologyClass>),

    #[error("matrix is not a section of the projection")]
    NotASection,

    #[error("cohomology classes live in different spaces")]
    SpaceMismatch,

    #[error("no 2-cochain with alpha∘omega = R_sigma: {0}")]
    NoOmegaLift(String),

    #[error("invalid crossed module: {}", .0.join("; "))]
    InvalidCrossedModule(Vec<String>),

    #[error("factorization through the quotient failed: {0}")]
    FactorizationFailure(String),

    #[error("no gamma solves the stabilizer system: {0}")]
    NoGamma(String),

    #[error("precondition failed on basis element {basis}: {condition}")]
    PreconditionFailed { basis: usize, condition: String },

    #[error("unknown catalog name {0:?}")]
    UnknownName(String),

    #[error("unknown reproduction bundle {0:?}")]
    UnknownBundle(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violation: {}", .0.join("; "))]
    InvariantViolation(Vec<String>),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<crate::scalar::ParseScalarError> for Error {
    fn from(e: crate::scalar::ParseScalarError) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
