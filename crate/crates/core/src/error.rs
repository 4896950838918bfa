//! Error type shared by every module.

use thiserror::Error;

/// Failure modes of the library.
///
/// `Domain` covers violated preconditions and malformed inputs, `Budget` covers
/// requests that exceed an explicit resource cap. The two are kept apart so a
/// caller never mistakes "too large to check" for "checked".
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
    #[error("round cap {cap} exceeded\n{transcript}")]
    RoundCap { cap: usize, transcript: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
