use thiserror::Error;

/// Errors raised by the algebra, group and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not rational: {0}")]
    NotRational(String),

    #[error("flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("group closure exceeds {0} elements")]
    OrderExceeded(usize),

    #[error("matrix is not invertible")]
    Singular,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unknown group '{name}'; valid forms: {valid}")]
    UnknownGroup { name: String, valid: String },

    #[error("unknown theorem '{name}'; valid ids: {valid}")]
    UnknownTheorem { name: String, valid: String },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("series error: {0}")]
    Series(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
