use thiserror::Error;

/// Errors raised by the library's constructors and solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error(
        "matrix rows have unequal lengths (row {row} has {found} entries, expected {expected})"
    )]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("matrix {0:?} is not invertible modulo {1}")]
    NotInvertible([u64; 4], u64),
    #[error("T_{p} needs precision at least {needed}, series has {prec}")]
    InsufficientPrecision { p: u64, prec: usize, needed: usize },
    #[error("series is not a T_{p} eigenform: coefficient {index} breaks the eigen relation")]
    NotEigenform { p: u64, index: usize },
    #[error("malformed representation label: {0}")]
    MalformedLabel(String),
    #[error("character is not a genuine representation character: {0}")]
    NotACharacter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
