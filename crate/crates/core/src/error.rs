use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("N must be >= 5 (got {0})")]
    UnsupportedN(usize),
    #[error("vertex {vertex} out of range 1..={max}")]
    VertexOutOfRange { vertex: i64, max: i64 },
    #[error("index ({i}, {j}) out of range 1..={max}")]
    IndexOutOfRange { i: usize, j: usize, max: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("result has a nonzero sqrt(5) part: {0}")]
    IrrationalResult(String),
    #[error("expected an integer, got {0}")]
    NonIntegerResult(String),
    #[error("unknown identity id {0} (expected 1..=7)")]
    UnknownIdentity(u8),
    #[error("invalid walk configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
