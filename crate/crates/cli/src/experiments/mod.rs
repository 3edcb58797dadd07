//! The six experiments. Each turns a validated config into result tables,
//! plotting series and a JSON summary; nothing here touches the filesystem.

mod clt;
mod constants;
mod covariance;
mod cumulants;
mod scaling;
mod simulate;

use rand::RngCore;
use serde::Serialize;
use supou::simulate::{Exactness, RngStream};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::RunError;
use crate::table::{PlotSeries, Table};

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentOutput {
    pub results: Table,
    /// Further CSV files as (file name, table).
    pub extra: Vec<(String, Table)>,
    pub plots: Vec<PlotSeries>,
    pub summary: serde_json::Value,
    pub max_tail_bound: Option<f64>,
    pub exactness: Option<Exactness>,
    /// Declared tolerances that were missed; non-empty means exit 3.
    pub tolerance_failures: Vec<String>,
}

impl ExperimentOutput {
    fn new(results: Table) -> Self {
        Self {
            results,
            extra: Vec::new(),
            plots: Vec::new(),
            summary: serde_json::Value::Null,
            max_tail_bound: None,
            exactness: None,
            tolerance_failures: Vec::new(),
        }
    }
}

pub fn execute(config: &ExperimentConfig) -> Result<ExperimentOutput, RunError> {
    match config.experiment {
        ExperimentKind::Cumulants => cumulants::run(config),
        ExperimentKind::Covariance => covariance::run(config),
        ExperimentKind::Scaling => scaling::run(config),
        ExperimentKind::Clt => clt::run(config),
        ExperimentKind::Constants => constants::run(config),
        ExperimentKind::Simulate => simulate::run(config),
    }
}

/// Master seed for the ensemble at horizon index `index`, drawn from streams
/// counted down from `u64::MAX` so they never meet replication streams.
pub(crate) fn horizon_seed(master_seed: u64, index: usize) -> u64 {
    RngStream::new(master_seed, u64::MAX - index as u64).next_u64()
}

fn summary<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).unwrap_or(serde_json::Value::Null)
}
