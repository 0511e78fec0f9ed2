use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient mismatch: expected C^{expected}, found C^{found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("sentence is not closed: free variable `{0}`")]
    NotClosed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ambient C^{0} is too large for exhaustive coordinate enumeration (max 4)")]
    FamilyTooLarge(usize),

    #[error("random sampling failed: {0}")]
    SamplingFailed(String),

    #[error("self-certification failed: {0}")]
    Certification(String),

    #[error("solver: {0}")]
    Solver(String),
}

impl Error {
    pub(crate) fn parse_at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let (line, column) = line_col(src, offset);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by malformed input text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
