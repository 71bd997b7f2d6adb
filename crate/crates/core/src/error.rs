use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("not a permutation group: {0}")]
    NotAGroup(String),

    #[error("order {n} exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("unsupported order {n}: {reason}")]
    UnsupportedOrder { n: usize, reason: String },

    #[error("invalid ring moduli: {0}")]
    InvalidModuli(String),

    #[error("not a composite matrix: {0}")]
    NotComposite(String),

    #[error("matrix {index} is not a Latin square")]
    NotLatin { index: usize },

    #[error("no admissible couple system exists for p = {p}")]
    NoCoupleSystem { p: u64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
