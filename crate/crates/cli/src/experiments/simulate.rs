use supou::analytics::{exact_cumulant, exact_cumulant_components};
use supou::estimate::k_statistic;
use supou::simulate::{replicate, replicate_paths};

use super::{horizon_seed, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::RunError;
use crate::table::{fmt_f64, PlotPoint, PlotSeries, Table};

const DEFAULT_DUMP: usize = 16;

pub(super) fn run(config: &ExperimentConfig) -> Result<ExperimentOutput, RunError> {
    let components = config.superposition()?;
    let grid = config.grid()?;
    let orders = config.orders_or(&[2, 3, 4]);
    if let Some(&m) = orders.iter().find(|&&m| !(1..=4).contains(&m)) {
        return Err(RunError::Validation(format!("k-statistic order must be 1..=4, got {m}")));
    }
    let replications = config.replications_or(1000);
    // Exact values at the same truncation, so truncation cancels.
    let spec = config.model.as_ref().map(|m| m.spec()).transpose()?;
    let exact = |m: u32, n: usize| -> Result<f64, RunError> {
        if m == 1 {
            return Ok(0.0);
        }
        Ok(match &spec {
            Some(s) => exact_cumulant(s, m, n)?.truncated,
            None => exact_cumulant_components(&components, m, n)?,
        })
    };

    let mut table = Table::new(&[
        "n", "m", "replications", "k_statistic", "std_error", "exact", "z_score",
    ]);
    let mut series: Vec<PlotSeries> =
        orders.iter().map(|m| PlotSeries { label: format!("m{m}"), points: vec![] }).collect();
    let mut extra = Vec::new();
    let mut worst_z: f64 = 0.0;
    let mut exactness = None;
    for (h, &n) in grid.iter().enumerate() {
        let seed = horizon_seed(config.seed(), h);
        let ensemble = replicate(&components, n, replications, seed)?;
        exactness = Some(ensemble.exactness);
        for (i, &m) in orders.iter().enumerate() {
            let k = k_statistic(&ensemble.centered_sums, m)?;
            let truth = exact(m, n)?;
            let z = (k.value - truth) / k.std_error;
            worst_z = worst_z.max(z.abs());
            table.push(vec![
                n.to_string(),
                m.to_string(),
                replications.to_string(),
                fmt_f64(k.value),
                fmt_f64(k.std_error),
                fmt_f64(truth),
                fmt_f64(z),
            ]);
            series[i].points.push(PlotPoint {
                n: n as f64,
                value: k.value,
                stderr: Some(k.std_error),
                theory_value: Some(truth),
            });
        }
        if config.dump_paths {
            let count = config.dump_count.unwrap_or(DEFAULT_DUMP).min(replications);
            let paths = replicate_paths(&components, n, count, seed)?;
            let mut dump = Table::new(&["replication_id", "i", "x", "s_centered"]);
            for p in &paths {
                for (i, (x, s)) in p.values.iter().zip(&p.centered_partial_sums).enumerate() {
                    dump.push(vec![
                        p.replication_id.to_string(),
                        (i + 1).to_string(),
                        fmt_f64(*x),
                        fmt_f64(*s),
                    ]);
                }
            }
            extra.push((format!("paths_n{n}.csv"), dump));
        }
    }
    let mut out = ExperimentOutput::new(table);
    out.plots = series;
    out.extra = extra;
    out.exactness = exactness;
    if let Some(limit) = config.max_z_score {
        if worst_z > limit {
            out.tolerance_failures.push(format!("|z| = {worst_z} exceeds max_z_score {limit}"));
        }
    }
    out.summary = serde_json::json!({ "max_abs_z_score": worst_z, "replications": replications });
    Ok(out)
}
