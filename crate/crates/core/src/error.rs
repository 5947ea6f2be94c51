use thiserror::Error;

/// Errors produced by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is rank deficient (rank {rank} < {required})")]
    Rank { rank: usize, required: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(
        "{monomials} monomials in {variables} variables; an invertible polynomial needs a square system"
    )]
    Shape { monomials: usize, variables: usize },

    #[error("exponent matrix has determinant 0")]
    SingularPolynomial,

    #[error("ownership mismatch: {0}")]
    Ownership(String),

    #[error("index {index} out of range for {n} variables")]
    Bounds { index: usize, n: usize },

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate polynomial: {0}")]
    Degenerate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
