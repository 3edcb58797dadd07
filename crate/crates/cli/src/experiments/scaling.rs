use supou::analytics::{exact_cumulant_components, exact_cumulants, theoretical_tau, Component, KmaxPolicy, SupouSpec};
use supou::estimate::{
    empirical_abs_moment, fit_scaling_moments, intermittency_check, moments_from_cumulants,
    GridRule, IntermittencyVerdict, ScalingFit,
};
use supou::simulate::replicate;

use super::{horizon_seed, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::RunError;
use crate::table::{fmt_f64, fmt_opt, PlotPoint, PlotSeries, Table};

/// Per-horizon moment estimates for every q, with standard errors.
struct MomentGrid {
    values: Vec<Vec<f64>>,
    std_errors: Vec<Vec<f64>>,
}

fn even_order(q: f64) -> Option<u32> {
    (q >= 2.0 && q.fract() == 0.0 && (q as u32).is_multiple_of(2)).then_some(q as u32)
}

fn exact_moments(
    config: &ExperimentConfig,
    qs: &[f64],
    grid: &[usize],
) -> Result<MomentGrid, RunError> {
    let orders: Vec<u32> = qs
        .iter()
        .map(|&q| {
            even_order(q).ok_or_else(|| {
                RunError::Validation(format!("exact moments need even integer q, got {q}"))
            })
        })
        .collect::<Result<_, _>>()?;
    let top = *orders.iter().max().unwrap_or(&2);
    let cumulant_orders: Vec<u32> = (2..=top).collect();
    let spec: Option<SupouSpec> = config.model.as_ref().map(|m| m.spec()).transpose()?;
    let components: Option<Vec<Component>> = match spec {
        Some(_) => None,
        None => Some(config.superposition()?),
    };
    let policy = config.k_max_per_horizon.map(KmaxPolicy::PerHorizon);
    let mut values = vec![Vec::with_capacity(grid.len()); qs.len()];
    for &n in grid {
        let mut kappa = vec![0.0];
        match (&spec, &components) {
            (Some(s), _) => {
                let local = match policy {
                    Some(p) => s.with_k_max(p.k_max(n))?,
                    None => *s,
                };
                kappa.extend(exact_cumulants(&local, &cumulant_orders, n)?.iter().map(|t| t.total()));
            }
            (None, Some(c)) => {
                for &m in &cumulant_orders {
                    kappa.push(exact_cumulant_components(c, m, n)?);
                }
            }
            (None, None) => unreachable!("superposition() validated the source"),
        }
        let mu = moments_from_cumulants(&kappa);
        for (slot, &q) in values.iter_mut().zip(&orders) {
            slot.push(mu[q as usize - 1]);
        }
    }
    let std_errors = vec![vec![0.0; grid.len()]; qs.len()];
    Ok(MomentGrid { values, std_errors })
}

fn simulated_moments(
    config: &ExperimentConfig,
    qs: &[f64],
    grid: &[usize],
) -> Result<MomentGrid, RunError> {
    let components = config.superposition()?;
    let replications = config.replications_or(10_000);
    let mut values = vec![Vec::with_capacity(grid.len()); qs.len()];
    let mut std_errors = values.clone();
    for (h, &n) in grid.iter().enumerate() {
        let ensemble = replicate(&components, n, replications, horizon_seed(config.seed(), h))?;
        for (i, &q) in qs.iter().enumerate() {
            let m = empirical_abs_moment(&ensemble.centered_sums, q)?;
            values[i].push(m.value);
            std_errors[i].push(m.std_error);
        }
    }
    Ok(MomentGrid { values, std_errors })
}

/// τ(q) where a value is asserted: q - 2(1-H) at even q for the infinite
/// superposition, q/2 for a finite one (Gaussian limit).
fn theory_tau(config: &ExperimentConfig, q: f64) -> Option<f64> {
    match &config.model {
        Some(m) => theoretical_tau(q, m.hurst).ok(),
        None => Some(q / 2.0),
    }
}

pub(super) fn run(config: &ExperimentConfig) -> Result<ExperimentOutput, RunError> {
    let grid = config.grid()?;
    let mut qs = config.moments.clone().unwrap_or_else(|| vec![2.0, 4.0]);
    if qs.iter().any(|q| !(q.is_finite() && *q > 0.0)) {
        return Err(RunError::Validation("moment orders must be positive".into()));
    }
    qs.sort_by(|a, b| a.total_cmp(b));
    qs.dedup();
    let rule = GridRule { min_decades: config.min_decades.unwrap_or(2.0), ..GridRule::default() };
    let moments = if config.use_exact_moments {
        exact_moments(config, &qs, grid)?
    } else {
        simulated_moments(config, &qs, grid)?
    };

    let fits: Vec<ScalingFit> = qs
        .iter()
        .zip(&moments.values)
        .map(|(&q, m)| fit_scaling_moments(grid, m, q, rule))
        .collect::<Result<_, _>>()?;
    let verdicts: Vec<IntermittencyVerdict> = fits
        .windows(2)
        .map(|w| intermittency_check(&w[0], &w[1]))
        .collect::<Result<_, _>>()?;

    let mut table = Table::new(&[
        "q", "n", "log_n", "moment", "stderr", "log_moment", "tau_hat", "tau_se", "tau_theory",
    ]);
    let mut plots = Vec::new();
    for (i, fit) in fits.iter().enumerate() {
        let theory = theory_tau(config, fit.q);
        // Theory line through the centroid of the fitted points.
        let centre_x = fit.grid.iter().map(|p| p.log_n).sum::<f64>() / fit.grid.len() as f64;
        let centre_y = fit.grid.iter().map(|p| p.log_moment).sum::<f64>() / fit.grid.len() as f64;
        let mut points = Vec::new();
        for (j, p) in fit.grid.iter().enumerate() {
            let se = moments.std_errors[i][j];
            table.push(vec![
                fmt_f64(fit.q),
                p.n.to_string(),
                fmt_f64(p.log_n),
                fmt_f64(moments.values[i][j]),
                fmt_f64(se),
                fmt_f64(p.log_moment),
                fmt_f64(fit.tau),
                fmt_f64(fit.std_error),
                fmt_opt(theory),
            ]);
            points.push(PlotPoint {
                n: p.n as f64,
                value: moments.values[i][j],
                stderr: Some(se),
                theory_value: theory.map(|t| (centre_y + t * (p.log_n - centre_x)).exp()),
            });
        }
        plots.push(PlotSeries { label: format!("q{}", fit.q), points });
    }

    let mut fit_table =
        Table::new(&["q", "tau_hat", "std_error", "intercept", "r_squared", "tau_theory"]);
    for fit in &fits {
        fit_table.push(vec![
            fmt_f64(fit.q),
            fmt_f64(fit.tau),
            fmt_f64(fit.std_error),
            fmt_f64(fit.intercept),
            fmt_f64(fit.r_squared),
            fmt_opt(theory_tau(config, fit.q)),
        ]);
    }
    let mut verdict_table =
        Table::new(&["p", "r", "ratio_p", "ratio_r", "difference", "std_error", "verdict"]);
    for v in &verdicts {
        verdict_table.push(vec![
            fmt_f64(v.p),
            fmt_f64(v.r),
            fmt_f64(v.ratio_p),
            fmt_f64(v.ratio_r),
            fmt_f64(v.difference),
            fmt_f64(v.std_error),
            v.verdict.as_str().to_string(),
        ]);
    }

    let mut out = ExperimentOutput::new(table);
    out.plots = plots;
    out.extra = vec![("fits.csv".into(), fit_table), ("verdicts.csv".into(), verdict_table)];
    out.summary = serde_json::json!({ "fits": fits, "verdicts": verdicts });
    Ok(out)
}
