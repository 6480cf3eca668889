use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A size guard (qubit count, density-matrix size, branch count) was exceeded.
    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("index error: {0}")]
    Index(String),
    #[error("validation error: {0}")]
    Validation(String),
    /// A forced outcome selected a branch whose probability is below the
    /// zero-probability threshold.
    #[error("impossible branch: qubit {qubit} outcome {outcome} has probability {probability:e}")]
    ImpossibleBranch {
        qubit: usize,
        outcome: u8,
        probability: f64,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn index(msg: impl Into<String>) -> Self {
        Error::Index(msg.into())
    }
}
