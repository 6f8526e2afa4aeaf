use thiserror::Error;

/// Errors raised by the solver toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The problem instance is degenerate for the requested computation
    /// (for example the operator maps the iterate to zero).
    #[error("degenerate problem: {0}")]
    Degenerate(String),

    /// A structural hypothesis of the requested result does not hold.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// Malformed scenario configuration or input file.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
