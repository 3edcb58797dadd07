//! Declarative experiment runner: strict JSON configs in, CSV results and a
//! JSON manifest out, with exit codes 0 (ok), 2 (validation) and 3 (a
//! declared tolerance or quadrature check failed).

pub mod config;
pub mod error;
pub mod experiments;
pub mod manifest;
pub mod runner;
pub mod table;

pub use config::{ExperimentConfig, ExperimentKind};
pub use error::RunError;
pub use runner::{execute_with_threads, run_config_file, RunOptions, RunReport};
