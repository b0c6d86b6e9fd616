use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("r must be at least 2 (got {0})")]
    InvalidOrder(u32),

    #[error("invalid decorated subset: {0}")]
    InvalidSubset(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("not a building set: {0}")]
    NotBuildingSet(String),

    #[error("building set has not been validated")]
    UnvalidatedBuildingSet,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("feasibility guard exceeded: {what} is {value}, bound is {bound}")]
    Feasibility {
        what: &'static str,
        value: String,
        bound: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tropical curve: {0}")]
    InvalidCurve(String),

    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
