use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    /// Some q-integer `[index]_q` vanishes, so q-factorials up to that index are zero.
    #[error("degenerate q = {q}: q-integer [{index}]_q vanishes")]
    DegenerateQ { q: String, index: usize },

    #[error("index {index} out of range (valid {min}..={max})")]
    OutOfRange { index: u64, min: u64, max: u64 },

    #[error("bound mismatch: {left} vs {right}")]
    BoundMismatch { left: u64, right: u64 },

    #[error("series order {order} is too small: {required} required ({reason})")]
    OrderTooSmall {
        order: usize,
        required: usize,
        reason: String,
    },

    #[error("invalid binomial type: {0}")]
    InvalidBinomialType(String),

    #[error("{0} is not supported by trial-division factorization")]
    Unsupported(u64),

    #[error("infeasible enumeration: {0}")]
    Infeasible(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
