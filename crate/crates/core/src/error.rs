use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A recurrence step with `curr + prev == 0`.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A root finder could not bracket or converge. `lo`/`hi` name the last
    /// bracket that was searched.
    #[error("no root for {what} in bracket [{lo:e}, {hi:e}]")]
    NoRoot { what: &'static str, lo: f64, hi: f64 },

    #[error("invalid ansatz parameters: {0}")]
    InvalidParams(String),

    /// The figure of merit divides by the optimal entanglement, which is zero
    /// for an empty ancilla.
    #[error("figure of merit undefined for M = {0}")]
    UndefinedMerit(usize),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
