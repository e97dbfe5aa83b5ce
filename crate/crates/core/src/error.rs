use thiserror::Error;

/// Errors produced by this crate.
///
/// Domain violations and malformed input are reported eagerly; none of the
/// computational routines silently clamp or round. `InvariantViolation` is
/// reserved for conditions that are mathematically guaranteed to hold, so
/// seeing one means the implementation (or its input certificates) is wrong.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument fell outside its documented domain.
    #[error("{what} must lie in {range}, got {value}")]
    OutOfRange {
        what: &'static str,
        range: &'static str,
        value: String,
    },

    /// A partial quotient was zero or negative.
    #[error("partial quotient at position {pos} is {value}; quotients must be >= 1")]
    BadQuotient { pos: usize, value: String },

    /// Text could not be parsed as the expected object.
    #[error("cannot parse {input:?} as {expected}")]
    Parse { input: String, expected: &'static str },

    /// A digit-stream source ran out of refinement depth before the query
    /// could be decided.
    #[error("stream exhausted: {0}")]
    Exhausted(String),

    /// A structural parameter combination is unsupported.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A certified runtime invariant failed. This is a bug report, not a
    /// recoverable condition.
    #[error("invariant violated at step {step}: {what}")]
    InvariantViolation { step: usize, what: String },

    /// An operation that needs at least one completed step was called on an
    /// empty state.
    #[error("no completed steps")]
    NoSteps,

    /// Reading a stream file failed.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
