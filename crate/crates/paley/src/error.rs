//! Error types shared across the crate.

use thiserror::Error;

/// Why an integer fails to be a fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FundamentalViolation {
    /// 0 is not the discriminant of any quadratic field.
    Zero,
    /// 1 is the discriminant of the rational field, not a quadratic one.
    One,
    /// delta = 1 (mod 4) but delta is not squarefree.
    NotSquarefreeOdd,
    /// delta = 2 or 3 (mod 4); such integers are never fundamental.
    BadResidue,
    /// delta = 0 (mod 4) but delta/4 is not squarefree.
    NotSquarefreeQuarter,
    /// delta = 0 (mod 4) but delta/4 = 0 or 1 (mod 4), so delta/4 is
    /// itself a discriminant candidate and 4*(delta/4) is not fundamental.
    QuarterBadResidue,
}

impl std::fmt::Display for FundamentalViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            Self::Zero => "delta = 0",
            Self::One => "delta = 1",
            Self::NotSquarefreeOdd => "delta = 1 (mod 4) but is not squarefree",
            Self::BadResidue => "delta = 2 or 3 (mod 4)",
            Self::NotSquarefreeQuarter => "delta = 4m with m not squarefree",
            Self::QuarterBadResidue => "delta = 4m with m = 0 or 1 (mod 4)",
        };
        f.write_str(msg)
    }
}

/// Errors produced by operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The integer is not a fundamental discriminant.
    #[error("{delta} is not a fundamental discriminant: {violation}")]
    NotFundamental {
        delta: i64,
        violation: FundamentalViolation,
    },

    /// The operation is only defined for positive discriminants
    /// (even characters / undirected graphs).
    #[error("operation requires delta > 0 (even character), got delta = {delta}")]
    Parity { delta: i64 },

    /// The input exceeds the range this (brute-force) operation supports.
    #[error("{what} supports inputs up to {limit}, got {got}")]
    UnsupportedRange {
        what: &'static str,
        limit: u64,
        got: u64,
    },

    /// Two arguments that must agree in size do not.
    #[error("size mismatch: expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    /// An I/O failure, carried as a message so the error stays `Clone + Eq`.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Self::Domain(msg.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
