//! Experiments, file formats and validators on top of `topinfer-core`.

pub mod config;
pub mod formats;
pub mod oracle;
pub mod report;
pub mod runner;

pub use config::{ConfigError, ExperimentConfig};
pub use formats::FormatError;
pub use report::{ExperimentReport, Verdict};
pub use runner::{run_experiment, write_outputs, RunError};
