use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("variable x{index} exceeds the declared arity {arity}")]
    ArityOverflow { index: usize, arity: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("elements belong to different contexts")]
    ContextMismatch,
    #[error("degree {requested} exceeds the truncation degree {limit}")]
    DegreeOverflow { requested: usize, limit: usize },
    #[error("argument is not primitive: {0}")]
    NotPrimitive(String),
    #[error("counit condition violated: {0}")]
    Counit(String),
    #[error("formal multiplication is not unital: {0}")]
    NotUnital(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("loops are not similar: {0}")]
    NotSimilar(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("failed to parse rational `{0}`")]
    BadRational(String),
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
