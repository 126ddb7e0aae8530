use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance handed to an exponential engine is above its configured cap.
    #[error("{what}: {vertices} vertices / {edges} edges exceeds the search cap ({cap})")]
    TooLarge {
        what: String,
        vertices: usize,
        edges: usize,
        cap: String,
    },

    #[error("search budget of {budget} configurations exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("crossing report does not belong to this layout")]
    StaleState,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for the errors that signal "instance too large for the exact engines".
    pub fn is_size_error(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::BudgetExceeded { .. })
    }
}
