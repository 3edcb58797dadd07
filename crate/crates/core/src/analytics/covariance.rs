use serde::Serialize;

use super::spec::{SupouSpec, Truncated};
use crate::error::{domain, Result};
use crate::parallel::chunked_vec_sum;
use crate::special::{gamma, lower_incomplete_gamma};

/// `δ ∫_{k_max+1/2}^∞ u^{-(1+a)} e^{-λt/u} du`, the midpoint-rule integral
/// stand-in for `Σ_{k>k_max} δ_k e^{-λ_k t}`. With `s = λt/u` this is
/// `δ (λt)^{-a} γ(a, λt/(k_max+1/2))`.
pub(crate) fn weight_tail(spec: &SupouSpec, t: f64) -> Result<f64> {
    let a = spec.decay();
    let start = spec.k_max() as f64 + 0.5;
    if t == 0.0 {
        return Ok(spec.delta() * start.powf(-a) / a);
    }
    let x = spec.lambda() * t;
    Ok(spec.delta() * x.powf(-a) * lower_incomplete_gamma(a, x / start)?)
}

/// Covariance `R(t) = C_2 Σ_k δ_k e^{-λt/k}` of the superposition, with the
/// k > k_max tail estimated by the incomplete-gamma integral.
pub fn covariance(spec: &SupouSpec, t: f64) -> Result<Truncated> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(domain(format!("covariance lag must be finite and >= 0, got {t}")));
    }
    let c2 = spec.unit_cumulant(2)?;
    let sum = chunked_vec_sum(1, spec.k_max() + 1, 1, |k, acc| {
        acc[0] += spec.weight(k) * (-spec.rate(k) * t).exp();
    });
    Ok(Truncated {
        truncated: c2 * sum[0],
        tail: c2 * weight_tail(spec, t)?,
    })
}

/// Covariances at integer lags 0..n: truncated sums and tails.
pub(crate) fn covariance_lags(spec: &SupouSpec, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let c2 = spec.unit_cumulant(2)?;
    let mut truncated = chunked_vec_sum(1, spec.k_max() + 1, n, |k, acc| {
        let rho = spec.rho(k);
        let mut p = spec.weight(k);
        for slot in acc.iter_mut() {
            *slot += p;
            p *= rho;
        }
    });
    truncated.iter_mut().for_each(|r| *r *= c2);
    let tail = (0..n)
        .map(|j| weight_tail(spec, j as f64).map(|w| c2 * w))
        .collect::<Result<Vec<_>>>()?;
    Ok((truncated, tail))
}

/// `L*(t) = t^{2(1-H)} R(t)` using the tail-corrected covariance.
pub fn slowly_varying(spec: &SupouSpec, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(domain(format!("slowly varying function needs t > 0, got {t}")));
    }
    Ok(t.powf(spec.decay()) * covariance(spec, t)?.total())
}

/// `lim_{t→∞} L*(t) = C_2 δ Γ(a) λ^{-a}` for the infinite superposition.
pub fn slowly_varying_limit(spec: &SupouSpec) -> Result<f64> {
    let a = spec.decay();
    Ok(spec.unit_cumulant(2)? * spec.delta() * gamma(a)? * spec.lambda().powf(-a))
}

/// Uniform bounds on `L*` for the infinite superposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlowlyVaryingBounds {
    /// Lower bound valid for t ≥ 1: `C_2 δ λ^{-a} γ(a, λ)`.
    pub lower: f64,
    /// Upper bound valid for all t ≥ 0: `C_2 δ λ^{-a} (Γ(a) + (a/e)^a)`.
    pub upper: f64,
}

impl SlowlyVaryingBounds {
    /// Bound on `L*(s)/L*(t)` for any s ≥ 0 and t ≥ 1.
    pub fn ratio_bound(&self) -> f64 {
        self.upper / self.lower
    }
}

pub fn slowly_varying_bounds(spec: &SupouSpec) -> Result<SlowlyVaryingBounds> {
    let a = spec.decay();
    let scale = spec.unit_cumulant(2)? * spec.delta() * spec.lambda().powf(-a);
    Ok(SlowlyVaryingBounds {
        lower: scale * lower_incomplete_gamma(a, spec.lambda())?,
        upper: scale * (gamma(a)? + (a / std::f64::consts::E).powf(a)),
    })
}
