use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,
    #[error("zero field element has no torus image")]
    ZeroElement,
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("class function is not an irreducible character")]
    NotIrreducible,
    #[error("representation is not cuspidal")]
    NotCuspidal,
    #[error("representation is not generic")]
    NotGeneric,
    #[error("no cuspidal matches the trace formula: {0}")]
    NoMatch(String),
    #[error("several candidates match the trace formula: {0}")]
    MultipleMatch(String),
    #[error("ambiguous label: {0}")]
    AmbiguousLabel(String),
    #[error("epsilon conventions have not been pinned")]
    ConventionNotPinned,
    #[error("induced Whittaker vector is ill-defined at {0}")]
    IllDefined(String),
    #[error("intertwined vector is not proportional: {0}")]
    NotProportional(String),
    #[error("zero denominator when extracting gamma factor")]
    ZeroDenominator,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
    #[error("cache format: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Cache(e.to_string())
    }
}
