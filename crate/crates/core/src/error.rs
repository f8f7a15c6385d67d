use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A point, diagram or parameter lies outside the domain of the space it was used with.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive routine was asked to enumerate more than it is allowed to.
    #[error("size guard exceeded: {what} has size {size}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// The caller broke the contract of an operation (mismatched exponents and similar).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A hypothesis of a theorem-backed routine failed when checked.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
