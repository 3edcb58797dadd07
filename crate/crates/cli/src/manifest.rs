use serde::Serialize;

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub max_tail_bound: Option<f64>,
    pub exactness: Option<String>,
    pub tolerance_failures: Vec<String>,
}

/// Run record written next to the results. Keys serialize in declaration
/// order, so the layout is stable.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub cli_version: &'static str,
    pub core_version: &'static str,
    pub experiment: Option<String>,
    pub status: String,
    pub exit_code: i32,
    pub reason: Option<String>,
    pub master_seed: Option<u64>,
    pub threads: usize,
    pub wall_time_seconds: f64,
    /// The effective config after command-line overrides; re-running it
    /// reproduces the results.
    pub config: Option<ExperimentConfig>,
    pub diagnostics: Diagnostics,
    pub outputs: Vec<String>,
    pub summary: serde_json::Value,
}

impl Manifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
