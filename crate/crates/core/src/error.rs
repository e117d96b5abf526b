use thiserror::Error;

/// Errors raised by the library. Timeouts are not errors; they are reported
/// as verdicts by the operations that can run out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: mismatched variable sets, bad dimensions, unknown names.
    #[error("usage error: {0}")]
    Usage(String),
    /// An operation was called outside of its documented domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Caller-supplied data broke the contract it was validated against.
    #[error("contract violated: {0}")]
    Contract(String),
    /// Two independent computations of the same quantity disagreed.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
