use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 65536)")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("vectors {0} and {1} are not orthogonal under the symplectic form")]
    NotIsotropic(usize, usize),
    #[error("subspace is not lagrangian")]
    NotLagrangian,
    #[error("invalid size {size} for graph family {family}")]
    InvalidFamilySize { family: String, size: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("degree {degree} out of range for {parties} parties")]
    DegreeOutOfRange { degree: usize, parties: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
