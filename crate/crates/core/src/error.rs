use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bases below 2 have no positional numeral system.
    InvalidBase(u64),
    DigitOutOfRange {
        digit: u32,
        base: u32,
    },
    /// An index argument fell below the smallest admissible value.
    IndexTooSmall {
        index: i64,
        min: i64,
    },
    /// A real-valued argument must be strictly positive (or nonnegative).
    NotPositive(&'static str),
    /// Tabulation request beyond the configured limit.
    Capacity {
        requested: u64,
        limit: u64,
    },
    /// Inconsistent matrix or vector dimensions in a linear representation.
    Shape(String),
    /// A high-precision computation lost more accuracy than the result can carry.
    Precision(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBase(b) => write!(f, "invalid base {b}: base must be at least 2"),
            Error::DigitOutOfRange { digit, base } => {
                write!(f, "digit {digit} out of range for base {base}")
            }
            Error::IndexTooSmall { index, min } => {
                write!(f, "index {index} is below the minimum {min}")
            }
            Error::NotPositive(what) => write!(f, "{what} must be positive"),
            Error::Capacity { requested, limit } => write!(
                f,
                "tabulation up to {requested} exceeds the configured limit {limit}"
            ),
            Error::Shape(msg) => write!(f, "malformed linear representation: {msg}"),
            Error::Precision(what) => write!(f, "insufficient precision in {what}"),
        }
    }
}

impl core::error::Error for Error {}
