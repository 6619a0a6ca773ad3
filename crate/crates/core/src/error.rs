use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("row {row}: {message}")]
    BadRow { row: u64, message: String },
    #[error("row {row}: duplicate date {date}")]
    DuplicateDate { row: u64, date: chrono::NaiveDate },
    #[error("series is empty")]
    EmptySeries,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("window of {len} points is shorter than the minimum of {min}")]
    WindowTooShort { len: usize, min: usize },
    #[error("t = {t} is not before the critical time tc = {tc}")]
    Domain { t: f64, tc: f64 },
    #[error("degenerate linear basis (condition estimate {condition:e})")]
    DegenerateBasis { condition: f64 },
    #[error("invalid noise model: {0}")]
    InvalidNoise(String),
    #[error("all {0} restarts produced degenerate fits")]
    AllRestartsDegenerate(usize),
    #[error("too few points: need {needed}, have {have}")]
    TooFewPoints { needed: usize, have: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown {kind} `{name}` (known: {known})")]
    UnknownName {
        kind: &'static str,
        name: String,
        known: String,
    },
}
