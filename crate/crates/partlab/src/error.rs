//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("negative part value {0} is not allowed")]
    NegativePart(i64),

    #[error("zero parts require the zero-parts flag")]
    ZeroPartNotAllowed,

    #[error("modulus k must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("zero parts are only admitted by class D")]
    ZeroPartOutsideD,

    #[error("partition {partition} is not in {class}: {reason}")]
    NotInClass {
        class: String,
        partition: String,
        reason: String,
    },

    #[error("value {value} is divisible by the modulus {k}")]
    NotKFree { value: u64, k: u64 },

    #[error("n = {n} exceeds the configured scale bound {max}")]
    ScaleBound { n: u64, max: u64 },

    #[error("series inversion requires a unit constant term, got {0}")]
    NonUnitConstantTerm(String),

    #[error("cannot parse partition: {0}")]
    Parse(String),

    #[error("unknown selector: {0}")]
    UnknownSelector(String),
}

pub type Result<T> = std::result::Result<T, Error>;
