use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: n = {n}, d = {d} ({reason})")]
    InvalidDomain { n: u32, d: usize, reason: &'static str },

    #[error("index {index} out of range for a domain of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("point {point:?} does not belong to [{n}]^{d}")]
    PointOutOfDomain { point: Vec<u32>, n: u32, d: usize },

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    Capacity { what: &'static str, size: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("query budget exceeded: {queries} queries > {budget:.1} (d = {d}, n = {n}, epsilon = {epsilon})")]
    BudgetExceeded { queries: u64, budget: f64, d: usize, n: u32, epsilon: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
