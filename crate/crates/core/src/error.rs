use thiserror::Error;

/// Position-tagged failure while reading an element, matrix or flag value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements do not belong to ring {ring}")]
    RingMismatch { ring: String },
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },
    #[error("element at position {index} is not a unit")]
    NonUnit { index: usize },
    #[error("invalid cut sequence: {0}")]
    InvalidCuts(String),
    #[error("matrix is not transitive: {0}")]
    NotTransitive(String),
    #[error("entry ({row}, {col}) is not central: fails against {witness}")]
    NonCentral { row: usize, col: usize, witness: String },
    #[error("supplied inverse is wrong: {0}")]
    NotInverse(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("power-sum condition fails for {condition}: value {value}")]
    PowerSum { condition: String, value: String },
    #[error("intertwining condition fails on sample {sample}")]
    Intertwining { sample: String },
    #[error("scalar ring mismatch: {0}")]
    ScalarMismatch(String),
    #[error("endomorphism of undeclared order: {0}")]
    UnknownOrder(String),
    #[error("outside supported envelope: {0}")]
    Envelope(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
