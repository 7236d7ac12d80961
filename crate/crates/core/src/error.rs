use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("eta = {0} is outside the open interval (0, 3)")]
    EtaOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not a valid Cayley-Menger matrix: {0}")]
    InvalidCayleyMenger(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("inconsistent branch: {0}")]
    InconsistentBranch(String),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("iteration diverged: {0}")]
    Divergence(String),
    #[error("singular Jacobian at iterate {0}")]
    SingularJacobian(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
