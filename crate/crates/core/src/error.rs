use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,

    #[error("non-finite value {value} at row {row}, column {col}")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("orientation mismatch: {0}")]
    OrientationMismatch(String),

    #[error("split boundary {boundary} out of range 1..{extent}")]
    InvalidSplit { boundary: usize, extent: usize },

    /// The centered sum of squares of an observed series is zero (or below
    /// the floor [`crate::losses::VARIANCE_FLOOR`]), so its Nash-Sutcliffe
    /// weight is undefined.
    #[error("zero-variance observed series{}", fmt_index(*.series))]
    ZeroVariance { series: Option<usize> },

    #[error("zero-variance observed series at indices {indices:?}; a positive extended constant makes them usable")]
    ZeroVarianceSeries { indices: Vec<usize> },

    #[error("series length {len} is too small; Nash-Sutcliffe quantities need at least 2 components")]
    DimensionTooSmall { len: usize },

    #[error("reference predictions have zero realized loss; skill score undefined")]
    DegenerateReference,

    #[error("design matrix is rank deficient (condition estimate {condition:e})")]
    RankDeficient { condition: f64 },

    #[error("minimizer did not converge after {iterations} iterations (gradient norm {grad_norm:e})")]
    NoConvergence {
        iterations: usize,
        grad_norm: f64,
        last: Vec<f64>,
    },

    #[error("covariance matrix is not symmetric positive semidefinite: {0}")]
    InvalidCovariance(String),

    #[error("rejection sampler acceptance rate {rate:e} fell below floor {floor:e}")]
    RejectionTooAggressive { rate: f64, floor: f64 },

    #[error("series of length {len} is too short for {lags} lags")]
    TooShort { len: usize, lags: usize },

    #[error("file not found: {}", .0.display())]
    MissingFile(PathBuf),

    #[error("ragged CSV: record {record} has {found} fields, expected {expected}")]
    RaggedRows {
        record: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-numeric cell {value:?} at row {row}, column {col}")]
    NonNumericCell { row: usize, col: usize, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn fmt_index(series: Option<usize>) -> String {
    match series {
        Some(i) => format!(" at index {i}"),
        None => String::new(),
    }
}

impl Error {
    /// Attaches a series index to errors raised by per-series computations.
    pub(crate) fn at_series(self, index: usize) -> Self {
        match self {
            Error::ZeroVariance { series: None } => Error::ZeroVariance {
                series: Some(index),
            },
            other => other,
        }
    }
}
