use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow during {0}")]
    Overflow(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("homomorphism is not well defined at source generator {generator}: {reason}")]
    IllDefinedHom { generator: usize, reason: String },

    #[error("Kunneth product needs a Tor term: {0}")]
    UnsupportedTor(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("descriptor incomplete: {0}")]
    Incomplete(String),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing bundle data: {0}")]
    MissingBundleData(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
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
