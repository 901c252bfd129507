use thiserror::Error;

/// Errors produced by field, polynomial, factorization and code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("no primitive {ell}^{k}-th root of unity in F_{q}")]
    NoSuchRoot { ell: u64, k: u32, q: u64 },
    #[error("code index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u64, max: u64 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("enumeration of {count} codewords exceeds cap {cap}")]
    TooLarge { count: String, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
