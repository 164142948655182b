//! Convergence studies against exact solutions: h-version (shrinking steps
//! at fixed degree) and p-version (rising degree at fixed step).

mod checks;
mod config;
mod metrics;
mod output;
mod run;

pub use checks::{run_checks, CheckResult};
pub use config::{OutputFormat, Precision, StudyConfig, StudyMode};
pub use metrics::{eoc, eoc_column, linf_error, SATURATION_FLOOR};
pub use output::{write_csv, write_json, write_rows, CSV_HEADER};
pub use run::{run_study, StudyRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StudyError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] crate::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
