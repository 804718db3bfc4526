use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },
    #[error("unassigned generator or object: {0}")]
    UnassignedGenerator(String),
    #[error("maps do not form a duality: {0}")]
    NotADuality(String),
    #[error("intertwining morphism is not invertible")]
    SingularSigma,
    #[error("objects live over different pivotal pairs")]
    PairMismatch,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("rewriting system does not terminate: {0}")]
    NonTerminating(String),
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("structure is not central: {0}")]
    NotCentral(String),
    #[error("element not in group: {0}")]
    ElementNotInGroup(String),
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// True for errors caused by malformed user input rather than a failed mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ShapeMismatch(_)
                | Error::TypeMismatch { .. }
                | Error::UnassignedGenerator(_)
                | Error::IndexMismatch(_)
                | Error::ElementNotInGroup(_)
                | Error::InvalidGroup(_)
                | Error::FieldMismatch(_)
                | Error::Parse(_)
                | Error::DegreeExceeded { .. }
        )
    }
}
