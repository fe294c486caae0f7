use thiserror::Error;

/// Errors produced by the exact kernels and the experiments built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of a negative integer")]
    NegativeSqrt,

    #[error("value {value} is outside the domain {domain}")]
    OutOfDomain { value: String, domain: &'static str },

    #[error("expansion is empty")]
    EmptyExpansion,

    #[error("continued fraction digit does not fit in 64 bits")]
    DigitOverflow,

    #[error("period detection exceeded {0} states")]
    StateCapExceeded(usize),

    #[error("Stern-Brocot depth {0} exceeded")]
    DepthExceeded(usize),

    #[error("no exact repeat found within {0} steps; try a larger depth")]
    Inconclusive(usize),

    #[error("working precision exhausted after {digits} digits (remaining width {width}); increase the precision or the digit budget")]
    Precision { digits: usize, width: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(value: impl ToString, domain: &'static str) -> Self {
        Error::OutOfDomain { value: value.to_string(), domain }
    }

    pub(crate) fn parse(input: &str, reason: &'static str) -> Self {
        Error::Parse { input: input.to_string(), reason }
    }
}
