use serde::Serialize;

use crate::error::{invalid, Result};

fn check_hurst(hurst: f64) -> Result<()> {
    if hurst > 0.5 && hurst < 1.0 {
        Ok(())
    } else {
        Err(invalid("hurst out of (0.5,1)"))
    }
}

/// τ(q) = q - 2(1-H), defined here for even integer q ≥ 2 only.
pub fn theoretical_tau(q: f64, hurst: f64) -> Result<f64> {
    check_hurst(hurst)?;
    if !(q >= 2.0 && q.fract() == 0.0 && (q as u64).is_multiple_of(2)) {
        return Err(invalid(format!(
            "theoretical scaling function is only available at even integer q >= 2, got {q}"
        )));
    }
    Ok(q - 2.0 * (1.0 - hurst))
}

/// Whether τ(p)/p < τ(r)/r.
pub fn tau_over_q_increasing(p: f64, r: f64, hurst: f64) -> Result<bool> {
    Ok(theoretical_tau(p, hurst)? / p < theoretical_tau(r, hurst)? / r)
}

/// The theoretical scaling function on a grid of even orders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFunction {
    pub hurst: f64,
    pub q: Vec<f64>,
    pub tau: Vec<f64>,
    /// Supremum of finite absolute-moment orders; infinite for every family
    /// in this crate.
    pub q_bar: f64,
}

impl ScalingFunction {
    pub fn theoretical(hurst: f64, q: &[f64]) -> Result<Self> {
        let tau = q.iter().map(|&x| theoretical_tau(x, hurst)).collect::<Result<Vec<_>>>()?;
        Ok(Self { hurst, q: q.to_vec(), tau, q_bar: f64::INFINITY })
    }

    /// τ(q)/q non-decreasing along the grid.
    pub fn ratio_non_decreasing(&self) -> bool {
        self.q
            .iter()
            .zip(&self.tau)
            .map(|(q, t)| t / q)
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[1] >= w[0])
    }

    /// Discrete convexity: successive slopes non-decreasing.
    pub fn is_convex(&self) -> bool {
        let slopes: Vec<f64> = self
            .q
            .windows(2)
            .zip(self.tau.windows(2))
            .map(|(q, t)| (t[1] - t[0]) / (q[1] - q[0]))
            .collect();
        slopes.windows(2).all(|s| s[1] >= s[0] - 1e-12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        assert!((theoretical_tau(2.0, 0.75).unwrap() - 1.5).abs() < 1e-15);
        assert!((theoretical_tau(4.0, 0.75).unwrap() - 3.5).abs() < 1e-15);
        assert!(tau_over_q_increasing(2.0, 4.0, 0.6).unwrap());
        assert!(tau_over_q_increasing(2.0, 4.0, 0.999).unwrap());
    }

    #[test]
    fn odd_and_fractional_orders_rejected() {
        assert!(theoretical_tau(3.0, 0.75).is_err());
        assert!(theoretical_tau(2.5, 0.75).is_err());
        assert!(theoretical_tau(0.0, 0.75).is_err());
        assert!(theoretical_tau(2.0, 1.0).is_err());
    }

    #[test]
    fn grid_properties() {
        for i in 1..=9 {
            let h = 0.5 + 0.05 * i as f64 - 0.0001;
            let s = ScalingFunction::theoretical(h, &[2.0, 4.0, 6.0]).unwrap();
            assert!(s.ratio_non_decreasing());
            assert!(s.is_convex());
            assert!(s.q_bar.is_infinite());
        }
    }
}
