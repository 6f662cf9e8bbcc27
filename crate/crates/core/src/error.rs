use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    /// A pairs-file record failed validation and loading was strict.
    #[error("line {line}: {reason}")]
    InvalidRecord { line: usize, reason: String },

    #[error("bad magic")]
    BadMagic,

    #[error("unsupported matrix file version {0}")]
    UnsupportedVersion(u32),

    #[error("truncated payload: {0}")]
    Truncated(&'static str),

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("invalid row ids: {0}")]
    RowIds(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("not positive definite: non-positive pivot at index {pivot}")]
    NotPositiveDefinite { pivot: usize },

    #[error("{view} covariance is not positive definite after regularization (pivot {pivot}); raise the ridge")]
    IllConditioned { view: &'static str, pivot: usize },

    #[error("row {row}: unresolved image id {id:?}")]
    UnresolvedImage { id: String, row: usize },

    #[error("row {row}: no statistics for category {category:?}")]
    MissingCategory { category: String, row: usize },

    #[error("need at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("undefined {0}")]
    UndefinedMetric(&'static str),

    #[error("label mismatch at row {0}")]
    LabelMismatch(usize),

    #[error("invalid score at row {row}: {reason}")]
    InvalidScore { row: usize, reason: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
