//! Error rates from counts, multi-run aggregation, Welch tests, crosstalk
//! estimates and reports.

use std::path::{Path, PathBuf};

use thiserror::Error;

mod counts;
mod crosstalk;
mod report;
mod stats;
mod table;

pub use counts::{count_set_bits, error_rate, CountsDocument};
pub use crosstalk::{control_baseline, crosstalk_estimate, BaselineMode, CrosstalkTable};
pub use report::{
    series_from_counts, DriverSummary, PairTest, Report, AGGREGATE_CSV, CROSSTALK_CSV, PER_DRIVER_CSV, REPORT_FILE,
    STDERR_CSV, T_TESTS_CSV,
};
pub use stats::{welch_t_test, TTestResult, VARIANCE_FLOOR};
pub use table::{
    aggregate_runs, per_driver_average, summarize, Aggregate, CellSample, DriverAverage, ErrorRateTable, RunSeries,
    SpectatorShare,
};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("failed to parse counts: {0}")]
    Parse(String),
    #[error("spectator count must be positive")]
    NoSpectators,
    #[error("shot count must be positive")]
    ZeroShots,
    #[error("bitstring `{key}` has the wrong length (expected {expected})")]
    BitLength { key: String, expected: usize },
    #[error("bitstring `{0}` contains characters other than 0 and 1")]
    BadBitstring(String),
    #[error("counts sum to {got}, expected {expected} shots")]
    ShotMismatch { expected: u64, got: u64 },
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("counts for set `{counts}` do not match metadata set(s) `{metadata}`")]
    SetMismatch { counts: String, metadata: String },
    #[error("no results for circuit `{0}`")]
    MissingCircuit(String),
    #[error("circuit `{0}`: {1}")]
    InCircuit(String, Box<AnalysisError>),
    #[error("gate axes differ across runs: {expected:?} vs {got:?}")]
    AxisMismatch { expected: Vec<String>, got: Vec<String> },
    #[error("at least one run is required")]
    NoRuns,
    #[error("t-test needs at least two points per sample (got {a} and {b})")]
    TooFewSamples { a: usize, b: usize },
    #[error("samples contain non-finite values")]
    NonFinite,
    #[error("t distribution: {0}")]
    Distribution(String),
    #[error("missing baseline: {0}")]
    MissingBaseline(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl AnalysisError {
    fn io(path: &Path, err: std::io::Error) -> Self {
        AnalysisError::Io {
            path: path.to_path_buf(),
            message: err.to_string(),
        }
    }
}
