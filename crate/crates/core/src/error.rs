use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// The backtracking search ran out of nodes. Carries what had been found
    /// so far so the caller can report it.
    #[error("search budget of {budget} nodes exhausted at base level {level} ({generators} generators found)")]
    Budget {
        budget: u64,
        level: usize,
        generators: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
