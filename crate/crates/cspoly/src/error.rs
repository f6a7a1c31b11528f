use std::fmt;

/// Errors reported by the numeric operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside an operation's domain.
    Domain(String),
    /// An iterative solver exceeded its hard iteration cap, which signals
    /// broken invariants rather than a slow case.
    IterationCap(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::IterationCap(msg) => write!(f, "iteration cap exceeded: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
