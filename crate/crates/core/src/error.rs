use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("{reason} at line {line}")]
    Parse { line: usize, reason: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("budget exceeded for {what}: need {need}, limit {limit}")]
    Budget {
        what: &'static str,
        need: u128,
        limit: u128,
    },

    /// The operation needs an explicit value table.
    #[error("operation requires a dense function table (got implicit `{0}`)")]
    NotDense(String),

    /// A condition of a smug-to-polymorphism family fails.
    #[error("family condition {condition} violated: {detail}")]
    FamilyCondition { condition: u8, detail: String },

    /// An internal consistency check failed. Indicates a bug, or an input
    /// that does not satisfy the stated mathematical hypotheses.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }

    pub(crate) fn budget(what: &'static str, need: u128, limit: u128) -> Self {
        Error::Budget { what, need, limit }
    }
}
