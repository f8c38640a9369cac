use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("end of Farey sequence reached")]
    EndOfSequence,
    #[error("invalid fraction {num}/{den}: {reason}")]
    InvalidFraction { num: u64, den: u64, reason: &'static str },
    #[error("fractions are not in increasing order (determinant {0})")]
    NotOrdered(i128),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point ({x}, {y}) is outside the Farey triangle")]
    OutsideTriangle { x: String, y: String },
    #[error("m = {m} is below the stabilization threshold c_r = {threshold}")]
    OutOfRegime { m: u64, threshold: u64 },
    #[error("vertex {0} lies outside the closure of the tile")]
    Precondition(String),
    #[error("parity mismatch in slot {slot}: value {value} is not {expected}")]
    ParityMismatch { slot: usize, value: u64, expected: &'static str },
    #[error("zero denominator: no windows to normalize by")]
    ZeroDenominator,
    #[error("Q = {q} exceeds the configured cap {cap}")]
    CapExceeded { q: u64, cap: u64 },
    #[error("integer overflow in lattice sweep")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}
