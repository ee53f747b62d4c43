use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid Yetter-Drinfeld action at group element {element}, basis index {index}: {reason}")]
    InvalidAction { element: usize, index: usize, reason: String },
    #[error("module has dimension zero")]
    EmptyModule,
    #[error("invalid cutoff {0}; need at least 1")]
    InvalidCutoff(usize),
    #[error("cutoff exceeded: degree {needed} requested, truncation stops at {cutoff}")]
    CutoffExceeded { needed: usize, cutoff: usize },
    #[error("invalid projection: {0}")]
    InvalidProjection(String),
    #[error("pairing degenerate in degree {0}")]
    PairingDegenerate(usize),
    #[error("transported structure inconsistent: {0}")]
    TransportInconsistent(String),
    #[error("omega construction inconsistent: {0}")]
    OmegaInconsistent(String),
    #[error("adjoint orbit of M_{j} under M_{i} does not vanish within cutoff {cutoff}")]
    NotDefinedAtCutoff { i: usize, j: usize, cutoff: usize },
    #[error("input error: {0}")]
    Input(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
