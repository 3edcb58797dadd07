//! Strict JSON experiment configs.

use std::path::Path;

use serde::{Deserialize, Serialize};
use supou::analytics::{Component, SupouSpec};
use supou::{Law, MarginalFamily};

use crate::error::RunError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Cumulants,
    Covariance,
    Scaling,
    Clt,
    Constants,
    Simulate,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Cumulants => "cumulants",
            ExperimentKind::Covariance => "covariance",
            ExperimentKind::Scaling => "scaling",
            ExperimentKind::Clt => "clt",
            ExperimentKind::Constants => "constants",
            ExperimentKind::Simulate => "simulate",
        }
    }
}

/// A truncated infinite superposition with the λ/k, k^{-(1+2(1-H))} schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub lambda: f64,
    pub hurst: f64,
    pub k_max: usize,
    pub family: Law,
}

impl ModelConfig {
    pub fn spec(&self) -> Result<SupouSpec, RunError> {
        Ok(SupouSpec::new(self.lambda, self.hurst, MarginalFamily::new(self.family)?, self.k_max)?)
    }
}

/// One component of an explicit finite superposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentConfig {
    pub family: Law,
    pub rate: f64,
}

/// Every experiment reads from this one schema; which fields are required
/// depends on `experiment`. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentConfig>>,
    /// Horizons n.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<usize>>,
    /// Covariance lags t.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lags: Option<Vec<f64>>,
    /// Cumulant orders m.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u32>>,
    /// Absolute-moment orders q for scaling fits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<f64>>,
    /// Hurst values for the constants experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hursts: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replications: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// k_max = factor × n at each horizon instead of the model's fixed k_max.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max_per_horizon: Option<usize>,
    /// Scaling from exact-cumulant moments instead of simulation.
    #[serde(default)]
    pub use_exact_moments: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_decades: Option<f64>,
    #[serde(default)]
    pub dump_paths: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature_tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tail_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_z_score: Option<f64>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, RunError> {
        serde_json::from_str(text).map_err(|e| RunError::Validation(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn model(&self) -> Result<&ModelConfig, RunError> {
        self.model.as_ref().ok_or_else(|| self.missing("model"))
    }

    pub fn spec(&self) -> Result<SupouSpec, RunError> {
        self.model()?.spec()
    }

    pub fn grid(&self) -> Result<&[usize], RunError> {
        let grid = self.grid.as_deref().ok_or_else(|| self.missing("grid"))?;
        if grid.is_empty() || grid.contains(&0) {
            return Err(RunError::Validation("grid must hold positive horizons".into()));
        }
        Ok(grid)
    }

    pub fn orders_or(&self, default: &[u32]) -> Vec<u32> {
        self.orders.clone().unwrap_or_else(|| default.to_vec())
    }

    pub fn replications_or(&self, default: usize) -> usize {
        self.replications.unwrap_or(default)
    }

    pub fn seed(&self) -> u64 {
        self.master_seed.unwrap_or(0)
    }

    /// The explicit component list, or the components of the model.
    pub fn superposition(&self) -> Result<Vec<Component>, RunError> {
        match (&self.components, &self.model) {
            (Some(_), Some(_)) => {
                Err(RunError::Validation("give either model or components, not both".into()))
            }
            (Some(list), None) => {
                if list.is_empty() {
                    return Err(RunError::Validation("components must not be empty".into()));
                }
                list.iter()
                    .map(|c| Ok(Component::new(MarginalFamily::new(c.family)?, c.rate)?))
                    .collect()
            }
            (None, Some(m)) => Ok(m.spec()?.components()?),
            (None, None) => Err(self.missing("model or components")),
        }
    }

    fn missing(&self, field: &str) -> RunError {
        RunError::Validation(format!("{} experiment requires {field}", self.experiment.name()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        let err = ExperimentConfig::from_json(r#"{"experiment":"cumulants","hurts":0.7}"#);
        assert!(matches!(err, Err(RunError::Validation(_))));
        let err = ExperimentConfig::from_json(
            r#"{"experiment":"covariance","model":{"lambda":1,"hurst":0.7,"k_max":3,
                "family":{"kind":"gamma","alpha":1,"beta":1,"gamma":2}}}"#,
        );
        assert!(err.is_err());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"experiment":"simulate","model":{"lambda":1.0,"hurst":0.75,"k_max":10,
            "family":{"kind":"gamma","alpha":1.0,"beta":1.0}},"grid":[16],"replications":100}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        let again = ExperimentConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn hurst_validated_at_load() {
        let c = ExperimentConfig::from_json(
            r#"{"experiment":"covariance","model":{"lambda":1,"hurst":1.2,"k_max":3,
                "family":{"kind":"gamma","alpha":1,"beta":1}}}"#,
        )
        .unwrap();
        let err = c.spec().unwrap_err();
        assert!(err.to_string().contains("hurst out of (0.5,1)"));
    }
}
