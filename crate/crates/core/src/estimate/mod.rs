//! Cross-replication estimators: k-statistics, absolute moments, log-log
//! scaling fits, intermittency verdicts and normality diagnostics.
//!
//! Standard errors come from the leave-one-out jackknife over replications,
//! except for the normality report, which uses a seeded bootstrap.

mod kstat;
mod moments;
mod normality;
mod scaling;

pub use kstat::{k_statistic, KStatistic};
pub use moments::{empirical_abs_moment, moments_from_cumulants, AbsMoment};
pub use normality::{ks_critical_value, normality_diagnostics, Interval, NormalityReport, Statistic};
pub use scaling::{
    fit_scaling, fit_scaling_moments, intermittency_check, GridPoint, GridRule,
    IntermittencyVerdict, ScalingFit, Verdict, DETECTION_MARGIN, DETECTION_Z,
};

/// Jackknife standard error from leave-one-out estimates.
pub(crate) fn jackknife_se(leave_one_out: &[f64]) -> f64 {
    let n = leave_one_out.len() as f64;
    let mean = leave_one_out.iter().sum::<f64>() / n;
    let ss: f64 = leave_one_out.iter().map(|t| (t - mean).powi(2)).sum();
    ((n - 1.0) / n * ss).sqrt()
}
