use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid design parameters: {0}")]
    InvalidParams(String),
    #[error("invalid orbit distribution: {0}")]
    InvalidDistribution(String),
    #[error("row length {found} does not match distribution width {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("not a symmetric design: {0}")]
    NotADesign(String),
    #[error("oracle refused: search space {size} exceeds ceiling {ceiling}")]
    OracleRefused { size: u128, ceiling: u128 },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
