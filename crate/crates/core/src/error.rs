use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("simplex {simplex} is missing its face {face} (absent or listed later)")]
    NotClosed { simplex: String, face: String },
    #[error("simplex {0} appears more than once")]
    Duplicate(String),
    #[error("malformed simplex {0}: vertices must be strictly ascending and nonempty")]
    MalformedSimplex(String),
    #[error("vertex {vertex} is not a member of simplex {simplex}")]
    NotMember { vertex: u32, simplex: String },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{sub} is not a subset of {sup}")]
    NotSubset { sub: String, sup: String },
    #[error("cochain simplex {0} does not belong to the complex")]
    UnsupportedCochain(String),
    #[error("invalid square index k={0}; k must be at least 1")]
    InvalidK(usize),
    #[error("cochain of degree {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("inconsistent reduction data: {0}")]
    InconsistentInput(String),
    #[error("stage {stage} out of range 1..={n}")]
    StageOutOfRange { stage: usize, n: usize },
    #[error("square of representative lies outside the cocycle basis: {0}")]
    SolveFailed(String),
    #[error("query out of range: {0}")]
    QueryOutOfRange(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cochain lists simplices of different dimensions ({first} and {second})")]
    MixedDegrees { first: usize, second: usize },
    #[error("empty cochain file needs an explicit degree")]
    MissingDegree,
    #[error("invalid point cloud: {0}")]
    InvalidPointCloud(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier, printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotClosed { .. } => "NotClosed",
            Error::Duplicate(_) => "Duplicate",
            Error::MalformedSimplex(_) => "MalformedSimplex",
            Error::NotMember { .. } => "NotMember",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotSubset { .. } => "NotSubset",
            Error::UnsupportedCochain(_) => "UnsupportedCochain",
            Error::InvalidK(_) => "InvalidK",
            Error::NotCocycle(_) => "NotCocycle",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::InconsistentInput(_) => "InconsistentInput",
            Error::StageOutOfRange { .. } => "StageOutOfRange",
            Error::SolveFailed(_) => "SolveFailed",
            Error::QueryOutOfRange(_) => "QueryOutOfRange",
            Error::Parse { .. } => "ParseError",
            Error::MixedDegrees { .. } => "MixedDegrees",
            Error::MissingDegree => "MissingDegree",
            Error::InvalidPointCloud(_) => "InvalidPointCloud",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Io(_) => "IoError",
        }
    }

    /// True for errors that indicate a bug upstream rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::SolveFailed(_) | Error::InconsistentInput(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
