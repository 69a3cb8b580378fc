use thiserror::Error;

/// Errors raised by the core library.
///
/// Axiom violations of otherwise well-formed data are not errors: they are
/// returned as validation reports by the various `validate*` functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input is structurally malformed (index out of range, wrong lengths,
    /// non-involutive duality, ...).
    #[error("malformed input: {0}")]
    Structural(String),

    /// An iterative numerical method did not converge, or floating point data
    /// could not be separated reliably.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A value that must be an integer was farther than the tolerance from
    /// the nearest integer.
    #[error("integrality check failed: {0}")]
    Integrity(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two results that must agree by theory disagree. Signals invalid data
    /// that slipped past validation or a tolerance that is too loose.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// A size cap was exceeded.
    #[error("size limit exceeded: {0}")]
    Size(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
