use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("degree {p} out of range 0..={n}")]
    DegreeOutOfRange { p: usize, n: usize },
    #[error("not a non-zero-divisor: {0}")]
    ZeroDivisor(String),
    #[error("pullback undefined along this map: {0}")]
    PullbackUndefined(String),
    #[error("ill-defined map: {0}")]
    InvalidMap(String),
    #[error("empty strict transform: {0}")]
    EmptyStrictTransform(String),
    #[error("chart is not certified smooth: {0}")]
    Unresolved(String),
    #[error("no monic direction within the shear budget: {0}")]
    NoMonicDirection(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("graph is not reduced: {0}")]
    NonReduced(String),
    #[error("inhomogeneous relation: {0}")]
    Inhomogeneous(String),
    #[error("basis is not a Groebner basis")]
    NotGroebner,
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::UnknownName { .. } => "unknown_name",
            Error::Duplicate { .. } => "duplicate_name",
            Error::ContextMismatch(_) => "context_mismatch",
            Error::Parse { .. } => "parse_error",
            Error::DegreeOutOfRange { .. } => "degree_out_of_range",
            Error::ZeroDivisor(_) => "zero_divisor",
            Error::PullbackUndefined(_) => "pullback_undefined",
            Error::InvalidMap(_) => "invalid_map",
            Error::EmptyStrictTransform(_) => "empty_strict_transform",
            Error::Unresolved(_) => "unresolved_chart",
            Error::NoMonicDirection(_) => "no_monic_direction",
            Error::Unsupported(_) => "unsupported",
            Error::NonReduced(_) => "non_reduced",
            Error::Inhomogeneous(_) => "inhomogeneous",
            Error::NotGroebner => "not_groebner",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
