use serde::Serialize;

use super::moments::empirical_abs_moment;
use crate::error::{domain, Error, Result};

/// Detection threshold in standard errors.
pub const DETECTION_Z: f64 = 3.0;
/// Smallest difference `τ̂(r)/r - τ̂(p)/p` treated as a real effect. Keeps
/// exact-input fits, whose regression standard error is close to zero, from
/// flagging a slowly varying finite-n curvature as intermittency.
pub const DETECTION_MARGIN: f64 = 0.02;

/// Requirements on a horizon grid before a slope is reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRule {
    pub min_points: usize,
    /// Minimum `log10(n_max / n_min)`.
    pub min_decades: f64,
}

impl Default for GridRule {
    fn default() -> Self {
        Self { min_points: 4, min_decades: 2.0 }
    }
}

impl GridRule {
    fn check(&self, horizons: &[usize]) -> Result<()> {
        if horizons.len() < self.min_points {
            return Err(Error::DegenerateGrid(format!(
                "need at least {} horizons, got {}",
                self.min_points,
                horizons.len()
            )));
        }
        if horizons.contains(&0) {
            return Err(Error::DegenerateGrid("horizons must be positive".into()));
        }
        let mut sorted = horizons.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegenerateGrid("horizons must be distinct".into()));
        }
        let span = (sorted[sorted.len() - 1] as f64 / sorted[0] as f64).log10();
        // Small slack so that e.g. {1, 100} counts as two decades.
        if span + 1e-12 < self.min_decades {
            return Err(Error::DegenerateGrid(format!(
                "horizons span {span:.3} decades, need {}",
                self.min_decades
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub n: usize,
    pub log_n: f64,
    pub log_moment: f64,
}

/// Least-squares fit of `log E|S(n)|^q` on `log n`; the slope estimates τ(q).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub q: f64,
    pub grid: Vec<GridPoint>,
    pub tau: f64,
    pub intercept: f64,
    pub std_error: f64,
    pub r_squared: f64,
}

/// Fits the scaling slope to given moment values, one per horizon.
pub fn fit_scaling_moments(
    horizons: &[usize],
    moments: &[f64],
    q: f64,
    rule: GridRule,
) -> Result<ScalingFit> {
    if horizons.len() != moments.len() {
        return Err(domain("one moment per horizon required"));
    }
    rule.check(horizons)?;
    if let Some(bad) = moments.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
        return Err(Error::DegenerateGrid(format!("moment {bad} has no logarithm")));
    }
    let grid: Vec<GridPoint> = horizons
        .iter()
        .zip(moments)
        .map(|(&n, &m)| GridPoint { n, log_n: (n as f64).ln(), log_moment: m.ln() })
        .collect();
    let k = grid.len() as f64;
    let mx = grid.iter().map(|p| p.log_n).sum::<f64>() / k;
    let my = grid.iter().map(|p| p.log_moment).sum::<f64>() / k;
    let sxx: f64 = grid.iter().map(|p| (p.log_n - mx).powi(2)).sum();
    let sxy: f64 = grid.iter().map(|p| (p.log_n - mx) * (p.log_moment - my)).sum();
    let syy: f64 = grid.iter().map(|p| (p.log_moment - my).powi(2)).sum();
    let tau = sxy / sxx;
    let intercept = my - tau * mx;
    let ssr: f64 = grid
        .iter()
        .map(|p| (p.log_moment - intercept - tau * p.log_n).powi(2))
        .sum();
    let std_error = (ssr / (k - 2.0) / sxx).sqrt();
    let r_squared = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };
    Ok(ScalingFit { q, grid, tau, intercept, std_error, r_squared })
}

/// Fits the scaling slope to ensemble absolute moments, one ensemble of
/// replications per horizon.
pub fn fit_scaling(
    horizons: &[usize],
    ensembles: &[Vec<f64>],
    q: f64,
    rule: GridRule,
) -> Result<ScalingFit> {
    if horizons.len() != ensembles.len() {
        return Err(domain("one ensemble per horizon required"));
    }
    let moments = ensembles
        .iter()
        .map(|e| empirical_abs_moment(e, q).map(|m| m.value))
        .collect::<Result<Vec<_>>>()?;
    fit_scaling_moments(horizons, &moments, q, rule)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Intermittent,
    NotDetected,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Intermittent => "intermittent",
            Verdict::NotDetected => "not-detected",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntermittencyVerdict {
    pub p: f64,
    pub r: f64,
    pub ratio_p: f64,
    pub ratio_r: f64,
    /// `τ̂(r)/r - τ̂(p)/p`.
    pub difference: f64,
    pub std_error: f64,
    pub verdict: Verdict,
}

/// Compares `τ̂(p)/p` with `τ̂(r)/r` for `p < r`.
///
/// Intermittent when the difference exceeds both `z·SE` and the margin; not
/// detected when even `difference + z·SE` stays within the margin;
/// inconclusive otherwise.
pub fn intermittency_check(fit_p: &ScalingFit, fit_r: &ScalingFit) -> Result<IntermittencyVerdict> {
    let (p, r) = (fit_p.q, fit_r.q);
    if !(p < r) {
        return Err(domain(format!("need p < r, got p={p}, r={r}")));
    }
    let ratio_p = fit_p.tau / p;
    let ratio_r = fit_r.tau / r;
    let difference = ratio_r - ratio_p;
    let std_error = ((fit_p.std_error / p).powi(2) + (fit_r.std_error / r).powi(2)).sqrt();
    let verdict = if difference > DETECTION_Z * std_error && difference > DETECTION_MARGIN {
        Verdict::Intermittent
    } else if difference + DETECTION_Z * std_error <= DETECTION_MARGIN {
        Verdict::NotDetected
    } else {
        Verdict::Inconclusive
    };
    Ok(IntermittencyVerdict { p, r, ratio_p, ratio_r, difference, std_error, verdict })
}
