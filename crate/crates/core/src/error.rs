use thiserror::Error;

/// Errors raised by loaders, constructions and checks.
///
/// Law failures are not errors: they are reported through
/// [`crate::ValidationReport`]. Errors signal bad input or an operation whose
/// preconditions do not hold.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("quotient not well defined: {0}")]
    QuotientNotWellDefined(String),
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("unsupported depth {0}")]
    UnsupportedDepth(usize),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("search limit exceeded: {0}")]
    SearchLimit(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("basepoint mismatch: {0}")]
    BasepointMismatch(String),
    #[error("naturality violated: {0}")]
    NaturalityViolated(String),
    #[error("group axiom failure: {0}")]
    GroupAxiom(String),
    #[error("lift not found: {0}")]
    LiftNotFound(String),
    #[error("ambiguous lift: {0}")]
    AmbiguousLift(String),
    #[error("restriction mismatch: {0}")]
    RestrictionMismatch(String),
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("io failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether the error stems from bad input rather than a failed law.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_) | Error::MalformedWitness(_) | Error::Io(_) | Error::DegreeMismatch(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
