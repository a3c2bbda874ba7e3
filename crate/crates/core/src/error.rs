use thiserror::Error;

/// Errors raised by the surrogate modelling pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("basis cardinality {cardinality} exceeds the cap of {cap}")]
    BasisTooLarge { cardinality: usize, cap: usize },

    #[error("information matrix is rank deficient; dependent columns {columns:?}")]
    RankDeficient { columns: Vec<usize> },

    #[error("leave-one-out error undefined: leverage of point {index} is {leverage}")]
    DegenerateLeverage { index: usize, leverage: f64 },

    #[error("leave-one-out error undefined: response has zero variance")]
    UndefinedLoo,

    #[error("candidate basis is empty")]
    EmptyCandidates,

    #[error("no path step produced a usable model")]
    SelectionFailed,

    #[error("matrix is not positive definite even with nugget {nugget:e}")]
    NotPositiveDefinite { nugget: f64 },

    #[error("trend normal matrix is singular (column {column})")]
    IllPosedTrend { column: usize },

    #[error("design point {index} has {replications} replication(s) and no supplied variance")]
    InsufficientReplications { index: usize, replications: usize },

    #[error("optimizer found no feasible evaluation: {0}")]
    OptimizerFailed(String),

    #[error("input {value} outside the simulator domain {domain}")]
    OutOfDomain { value: f64, domain: String },

    #[error("budget {budget} cannot give {per_point} replication(s) to each of {points} points")]
    BudgetTooSmall { budget: usize, points: usize, per_point: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
