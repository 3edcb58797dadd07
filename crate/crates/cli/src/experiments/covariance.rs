use serde::Serialize;
use supou::analytics::{covariance, slowly_varying, slowly_varying_bounds, slowly_varying_limit};

use super::{summary, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::RunError;
use crate::table::{fmt_f64, fmt_opt, PlotPoint, PlotSeries, Table};

#[derive(Serialize)]
struct Summary {
    slowly_varying_limit: f64,
    lower_bound: f64,
    upper_bound: f64,
}

pub(super) fn run(config: &ExperimentConfig) -> Result<ExperimentOutput, RunError> {
    let spec = config.spec()?;
    let lags: Vec<f64> = match (&config.lags, &config.grid) {
        (Some(l), _) => l.clone(),
        (None, Some(g)) => g.iter().map(|&n| n as f64).collect(),
        (None, None) => {
            return Err(RunError::Validation("covariance experiment requires lags or grid".into()))
        }
    };
    let limit = slowly_varying_limit(&spec)?;
    let bounds = slowly_varying_bounds(&spec)?;
    let a = spec.decay();

    let mut table =
        Table::new(&["t", "truncated", "tail", "total", "tail_bound", "slowly_varying", "limit"]);
    let mut r_points = Vec::new();
    let mut l_points = Vec::new();
    let mut max_tail: f64 = 0.0;
    for &t in &lags {
        let r = covariance(&spec, t)?;
        // L*(t) = t^a R(t) vanishes at the origin and carries no information.
        let lstar = if t > 0.0 { Some(slowly_varying(&spec, t)?) } else { None };
        max_tail = max_tail.max(r.tail_fraction());
        table.push(vec![
            fmt_f64(t),
            fmt_f64(r.truncated),
            fmt_f64(r.tail),
            fmt_f64(r.total()),
            fmt_f64(r.tail_fraction()),
            fmt_opt(lstar),
            fmt_f64(limit),
        ]);
        r_points.push(PlotPoint {
            n: t,
            value: r.total(),
            stderr: Some(r.tail.abs()),
            theory_value: (t > 0.0).then(|| limit * t.powf(-a)),
        });
        if let Some(value) = lstar {
            l_points.push(PlotPoint { n: t, value, stderr: None, theory_value: Some(limit) });
        }
    }
    let mut out = ExperimentOutput::new(table);
    out.plots = vec![
        PlotSeries { label: "r".into(), points: r_points },
        PlotSeries { label: "lstar".into(), points: l_points },
    ];
    out.max_tail_bound = Some(max_tail);
    out.summary = summary(&Summary {
        slowly_varying_limit: limit,
        lower_bound: bounds.lower,
        upper_bound: bounds.upper,
    });
    Ok(out)
}
