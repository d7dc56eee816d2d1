use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural parameter is inconsistent (wrong arity, divisibility, ...).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An enumeration or search would exceed its configured budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// A precondition was found violated while an algorithm was running.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Malformed serialized input.
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! parameter {
    ($($arg:tt)*) => { $crate::error::Error::Parameter(format!($($arg)*)) };
}
macro_rules! resource {
    ($($arg:tt)*) => { $crate::error::Error::Resource(format!($($arg)*)) };
}

pub(crate) use {domain, parameter, resource};
