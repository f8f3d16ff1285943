//! Timing sweeps and statistical checks for the samplers in `mnsample`.

pub mod bench;
pub mod config;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Sampling(#[from] mnsample::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub use bench::{format_seconds, run_benchmark, write_csv, BenchOutcome, TimingRecord};
pub use config::{BenchConfig, VerifyConfig, WeightSource};
pub use verify::{
    chi_square, chi_square_critical, verify_complexity, verify_statistics, ComplexityCell,
    ComplexityReport, GofReport, StatisticsReport,
};
