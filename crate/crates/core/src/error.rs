use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range caller input.
    #[error("input error: {0}")]
    Input(String),

    /// A text file failed to parse; `line` and `column` are 1-based.
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Collection produced a table that is not a group of the expected order.
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("resource limit: {0}")]
    Resource(String),

    /// The operation is not defined for this argument (e.g. invariants of a nonabelian subgroup).
    #[error("domain error: {0}")]
    Domain(String),

    /// A hypothesis of the requested check does not hold for this input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Something that cannot happen for finite p-groups happened anyway.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
