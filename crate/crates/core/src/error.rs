use thiserror::Error;

/// Errors raised by the library. Check failures inside verification
/// pipelines are reported, not raised; these are the hard failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tame violation: {0} is divisible by 3")]
    TameViolation(u64),

    #[error("no element of order {order} is available in a field built for order {hosted}")]
    OrderUnavailable { order: u64, hosted: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("field degree {0} exceeds the supported maximum")]
    FieldTooLarge(usize),

    #[error("determinant violation: generator {gen:?} has coordinate sum not divisible by {r}")]
    DeterminantViolation { gen: [u64; 3], r: u64 },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("normal form violated: {}", .0.join("; "))]
    NormalForm(Vec<String>),

    #[error("representation error: {0}")]
    RepresentationError(String),

    #[error("formula precondition violated: {0}")]
    FormulaPreconditionViolation(String),

    #[error("triangulation construction failed: {0}")]
    ConstructionFailure(String),

    #[error("equivariance violation: {0}")]
    EquivarianceViolation(String),

    #[error("relation kernel has dimension {0}, expected 1")]
    RelationAmbiguity(usize),

    #[error("chart identity `{check}` failed, residual {residual}")]
    ChartMismatch { check: String, residual: String },

    #[error("unsupported blow-up center: {0}")]
    UnsupportedCenter(String),

    #[error("quotient presentation mismatch: {0}")]
    PresentationMismatch(String),

    #[error("polynomial parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Whether the error stems from the caller's input rather than from a
    /// failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::TameViolation(_)
                | Error::DeterminantViolation { .. }
                | Error::InvalidSpec(_)
                | Error::NormalForm(_)
                | Error::Parse(_)
                | Error::Io(_)
                | Error::FieldTooLarge(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
