use thiserror::Error;

/// Errors produced by the representation library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u32 },

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("alphabet mismatch: base {left} vs base {right}")]
    AlphabetMismatch { left: u32, right: u32 },

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
