use thiserror::Error;

/// Errors produced by dataset ingestion, estimation, and screening.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot open '{path}': {source}")]
    MissingFile {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("missing column '{0}' in header")]
    MissingColumn(String),

    #[error("non-numeric cell '{value}' at row {row}, column '{column}'")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },

    #[error("invalid status value '{value}' at row {row} (must be literal 0 or 1)")]
    InvalidStatus { row: usize, value: String },

    #[error("negative time {value} at row {row}")]
    NegativeTime { row: usize, value: f64 },

    #[error("non-finite value at row {row}, column '{column}'")]
    NonFinite { row: usize, column: String },

    #[error("no observed events (all status = 0)")]
    NoEvents,

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("inverted interval at row {row}: left {left} >= right {right}")]
    InvertedInterval { row: usize, left: f64, right: f64 },

    #[error("no finite intervals (all rows right-censored)")]
    NoFiniteIntervals,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("feature index {index} out of range (p = {p})")]
    FeatureIndex { index: usize, p: usize },

    #[error("dataset invalid: {0}")]
    InvalidDataset(String),

    #[error("censoring target {target} unattainable within bound [{lo}, {hi}]")]
    CensoringUnattainable { target: f64, lo: f64, hi: f64 },

    #[error("cross-validation fold without events after {retries} reassignments")]
    EventFreeFold { retries: usize },

    #[error("degenerate basis column {0} (zero variance)")]
    DegenerateColumn(usize),

    #[error("deviance residual undefined at row {row}: cumulative hazard is zero at an event")]
    DegenerateResidual { row: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
