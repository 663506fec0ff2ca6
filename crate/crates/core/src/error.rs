use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Index beyond the domain of a finite table or a window-relative sequence.
    #[error("index {index} is outside the defined range 0..={last}")]
    OutOfRange { index: usize, last: usize },

    /// A float-mode value does not fit the exponent range.
    #[error("range error: {0} (use interval mode or the log-domain evaluators)")]
    Range(String),

    /// Exact rational requested for a value that is not known to be rational.
    #[error("value is not exactly representable as a rational: {0}")]
    NotExact(String),

    /// A certified comparison could not be decided before the precision cap.
    #[error("unresolved at {bits} bits: {what}")]
    Unresolved { what: String, bits: u32 },

    #[error("jet too short: need {needed} entries, got {got}")]
    JetTooShort { needed: usize, got: usize },

    #[error("inconsistent arguments: {0}")]
    Inconsistent(String),

    /// Enumeration refused above its cost guard.
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),

    /// A construction precondition (e.g. log-convexity gate) is not met.
    #[error("precondition failed: {0}")]
    Precondition(String),
}
