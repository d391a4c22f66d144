pub mod alexander;
pub mod cosmetic;
pub mod graded;
pub mod lens;
pub mod linalg;
pub mod seifert;
pub mod selftest;
pub mod snf;
pub mod surgery;

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// malformed input (file syntax, bad coefficients, usage of an op
    /// outside its declared domain)
    Domain(String),
    /// a computation failed an internal consistency check
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "{}", m),
            Error::Internal(m) => write!(f, "internal error: {}", m),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub fn internal_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
