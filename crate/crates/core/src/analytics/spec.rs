use serde::Serialize;

use crate::error::{invalid, Result};
use crate::marginals::MarginalFamily;

/// A truncated infinite superposition: components k = 1..=k_max with
/// `λ_k = λ/k`, `ρ_k = exp(-λ_k)` and `δ_k = δ k^{-(1+2(1-H))}`, where δ is
/// the family's δ-like parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupouSpec {
    lambda: f64,
    hurst: f64,
    family: MarginalFamily,
    k_max: usize,
}

impl SupouSpec {
    pub fn new(lambda: f64, hurst: f64, family: MarginalFamily, k_max: usize) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(invalid(format!("lambda must be positive, got {lambda}")));
        }
        if !(hurst > 0.5 && hurst < 1.0) {
            return Err(invalid("hurst out of (0.5,1)"));
        }
        if k_max == 0 {
            return Err(invalid("k_max must be at least 1"));
        }
        Ok(Self { lambda, hurst, family, k_max })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn family(&self) -> &MarginalFamily {
        &self.family
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn with_k_max(&self, k_max: usize) -> Result<Self> {
        Self::new(self.lambda, self.hurst, self.family, k_max)
    }

    /// `a = 2(1 - H)`.
    pub fn decay(&self) -> f64 {
        2.0 * (1.0 - self.hurst)
    }

    /// Base scale δ (the family's δ-like parameter).
    pub fn delta(&self) -> f64 {
        self.family.scale_param()
    }

    pub fn rate(&self, k: usize) -> f64 {
        self.lambda / k as f64
    }

    pub fn rho(&self, k: usize) -> f64 {
        (-self.rate(k)).exp()
    }

    /// δ_k.
    pub fn weight(&self, k: usize) -> f64 {
        self.delta() * (k as f64).powf(-(1.0 + self.decay()))
    }

    /// C_m of the family.
    pub fn unit_cumulant(&self, m: u32) -> Result<f64> {
        self.family.unit_cumulant(m)
    }

    /// The explicit component list k = 1..=k_max. Each component law is the
    /// base law raised to the convolution power `δ_k / δ`.
    pub fn components(&self) -> Result<Vec<Component>> {
        (1..=self.k_max)
            .map(|k| {
                let family = self.family.convolution_power(self.weight(k) / self.delta())?;
                Component::new(family, self.rate(k))
            })
            .collect()
    }
}

/// One OU type component of a superposition: a stationary marginal law and
/// its mean-reversion rate per unit time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Component {
    pub family: MarginalFamily,
    pub rate: f64,
}

impl Component {
    pub fn new(family: MarginalFamily, rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(invalid(format!("component rate must be positive, got {rate}")));
        }
        Ok(Self { family, rate })
    }

    /// Lag-one autocorrelation `exp(-rate)`.
    pub fn rho(&self) -> f64 {
        (-self.rate).exp()
    }
}

/// A sum over components k ≤ k_max together with an integral estimate of
/// the omitted k > k_max tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncated {
    pub truncated: f64,
    pub tail: f64,
}

impl Truncated {
    pub fn total(&self) -> f64 {
        self.truncated + self.tail
    }

    /// Tail as a fraction of the total.
    pub fn tail_fraction(&self) -> f64 {
        let t = self.total();
        if t == 0.0 {
            0.0
        } else {
            (self.tail / t).abs()
        }
    }
}
