use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("trivial character where a nontrivial one is required")]
    TrivialCharacter,

    #[error("relation {index} is not homogeneous")]
    NonHomogeneous { index: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("window exceeded: {what}; try {suggestion}")]
    WindowExceeded { what: String, suggestion: String },

    #[error("colimit did not stabilize in degree {degree} up to stage {stage}")]
    NotStable { degree: i64, stage: u32 },

    #[error("exact division failed: {0}")]
    DivisionFailed(String),

    #[error("leading term is not invertible: {0}")]
    NotInvertible(String),

    #[error("substitution needs terms beyond the truncation: {0}")]
    Truncation(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn window(what: impl Into<String>, suggestion: impl Into<String>) -> Self {
        Error::WindowExceeded {
            what: what.into(),
            suggestion: suggestion.into(),
        }
    }

    /// True for the failures that a larger computation window would fix.
    #[must_use]
    pub fn is_window_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::WindowExceeded { .. } | Error::NotStable { .. } | Error::Truncation(_)
        )
    }
}
