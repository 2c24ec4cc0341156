use thiserror::Error;

/// Errors produced by graph ingestion, model construction, eigensolves and
/// the inference pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error("operation requires a non-empty graph")]
    EmptyGraph,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("probability entry P[{i}][{j}] = {value} outside [0, 1]")]
    ProbabilityOutOfRange { i: usize, j: usize, value: f64 },

    #[error("block model validation failed: {0}")]
    InvalidSpec(String),

    #[error("eigensolver did not converge after {restarts} restarts (max residual {max_residual:.3e})")]
    NotConverged {
        restarts: usize,
        max_residual: f64,
        /// Best eigenvalue approximations at abort time, decreasing.
        partial: Vec<f64>,
        /// Residual norm per returned value.
        residuals: Vec<f64>,
    },

    #[error("matrix dimension {n} exceeds the dense limit {limit}")]
    DimensionGuard { n: usize, limit: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("degenerate eigengap: {0}")]
    DegenerateGap(String),

    #[error("no calibration table for (n = {n}, d = {d}); run calibration first")]
    MissingCalibration { n: usize, d: usize },

    #[error("calibration table format error in {path}: {msg}")]
    TableFormat { path: String, msg: String },

    #[error("replicate {index} failed: {source}")]
    Replicate {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
