//! Library error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Inputs outside the supported range (wild ramification, bad prime, ...).
    #[error("configuration error: {0}")]
    Config(String),
    /// Working precision exhausted or a non-unit where a unit was required.
    #[error("precision error: {0}")]
    Precision(String),
    /// The requested object does not exist for these parameters.
    #[error("no such object: {0}")]
    Unavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
