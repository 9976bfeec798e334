use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: String, got: String },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("state vector is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("unsupported state dimension {0} (expected at least 2)")]
    BadStateDim(usize),
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
    #[error("operator is not a projector (deviation {0:e})")]
    NotProjector(f64),
    #[error("malformed ensemble: <I> = {0}, expected 1")]
    MalformedEnsemble(f64),
    #[error("vectors are not orthogonal (|<a|b>| = {0:e})")]
    NotOrthogonal(f64),
    #[error("degenerate directions: the two unit vectors are parallel or antiparallel")]
    DegenerateDirection,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("strategy returned {0}, expected +1 or -1")]
    BadOutcome(i32),
    #[error("projectors do not resolve the identity (deviation {0:e})")]
    NotResolution(f64),
    #[error("observable does not commute with projector {index} (deviation {deviation:e})")]
    NotCommuting { index: usize, deviation: f64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
