use serde::Serialize;
use supou::analytics::{cumulant_report, KmaxPolicy};

use super::{summary, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::RunError;
use crate::table::{fmt_f64, PlotPoint, PlotSeries, Table};

#[derive(Serialize)]
struct OrderSummary {
    m: u32,
    ratios: Vec<f64>,
    monotone: bool,
}

pub(super) fn run(config: &ExperimentConfig) -> Result<ExperimentOutput, RunError> {
    let spec = config.spec()?;
    let grid = config.grid()?;
    let orders = config.orders_or(&[2, 3, 4]);
    let policy = match config.k_max_per_horizon {
        Some(f) => KmaxPolicy::PerHorizon(f),
        None => KmaxPolicy::Fixed(spec.k_max()),
    };
    let report = cumulant_report(&spec, policy, &orders, grid)?;

    let mut table = Table::new(&[
        "m", "n", "k_max", "exact", "truncated", "tail", "tail_bound", "asymptotic", "ratio",
    ]);
    for e in &report.entries {
        table.push(vec![
            e.m.to_string(),
            e.n.to_string(),
            e.k_max.to_string(),
            fmt_f64(e.exact),
            fmt_f64(e.truncated),
            fmt_f64(e.tail),
            fmt_f64(e.tail_bound),
            fmt_f64(e.asymptotic),
            fmt_f64(e.ratio),
        ]);
    }
    let mut out = ExperimentOutput::new(table);
    out.plots = orders
        .iter()
        .map(|&m| PlotSeries {
            label: format!("m{m}"),
            points: grid
                .iter()
                .filter_map(|&n| report.entry(m, n))
                .map(|e| PlotPoint {
                    n: e.n as f64,
                    value: e.ratio,
                    stderr: Some(e.tail_bound * e.ratio.abs()),
                    theory_value: Some(1.0),
                })
                .collect(),
        })
        .collect();
    let max_tail = report.entries.iter().map(|e| e.tail_bound).fold(0.0, f64::max);
    out.max_tail_bound = Some(max_tail);
    if let Some(limit) = config.max_tail_bound {
        if max_tail > limit {
            out.tolerance_failures
                .push(format!("tail bound {max_tail:e} exceeds max_tail_bound {limit:e}"));
        }
    }
    let orders_summary: Vec<OrderSummary> = orders
        .iter()
        .map(|&m| {
            let ratios = report.ratios(m);
            let increasing = ratios.windows(2).all(|w| w[1] >= w[0]);
            let decreasing = ratios.windows(2).all(|w| w[1] <= w[0]);
            OrderSummary { m, monotone: increasing || decreasing, ratios }
        })
        .collect();
    out.summary = summary(&orders_summary);
    Ok(out)
}
