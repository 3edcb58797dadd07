use serde::Serialize;

use crate::error::{invalid, Result};

/// CLT norming constants of a finite superposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CltNorming {
    /// `(Σ Var_k (1 - e^{-λ_k})/(1 + e^{-λ_k}))^{1/2}`.
    pub c_paper: f64,
    /// `(Var S(n) / n)^{1/2}` from the exact covariance double sum.
    pub c_exact: f64,
}

/// Norming constants for components given as `(variance, rate)` pairs.
pub fn clt_norming(components: &[(f64, f64)], n: usize) -> Result<CltNorming> {
    if components.is_empty() {
        return Err(invalid("at least one component is required"));
    }
    if n == 0 {
        return Err(invalid("horizon n must be at least 1"));
    }
    for &(var, rate) in components {
        if !(var.is_finite() && var >= 0.0) || !(rate.is_finite() && rate > 0.0) {
            return Err(invalid(format!("invalid component (variance {var}, rate {rate})")));
        }
    }
    let nf = n as f64;
    let mut printed = 0.0;
    let mut exact = 0.0;
    for &(var, rate) in components {
        let rho = (-rate).exp();
        printed += var * (1.0 - rho) / (1.0 + rho);
        // Σ_{|h|<n} (1 - |h|/n) ρ^{|h|}
        let mut lagged = 0.0;
        let mut p = 1.0;
        for h in 1..n {
            p *= rho;
            lagged += (1.0 - h as f64 / nf) * p;
        }
        exact += var * (1.0 + 2.0 * lagged);
    }
    Ok(CltNorming { c_paper: printed.sqrt(), c_exact: exact.sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_component_values() {
        let c = clt_norming(&[(1.0, 1.0)], 1_000_000).unwrap();
        let e = (-1.0f64).exp();
        assert!((c.c_paper.powi(2) - (1.0 - e) / (1.0 + e)).abs() < 1e-15);
        assert!((c.c_paper.powi(2) - 0.462_117_157_260_009_8).abs() < 1e-12);
        // long-run variance (1+ρ)/(1-ρ) up to O(1/n)
        assert!((c.c_exact.powi(2) - (1.0 + e) / (1.0 - e)).abs() < 1e-5);
        assert!((c.c_exact.powi(2) - 2.163_953_413_738_653).abs() < 1e-5);
    }

    #[test]
    fn iid_limit() {
        let c = clt_norming(&[(2.5, 60.0)], 100).unwrap();
        assert!((c.c_paper.powi(2) - 2.5).abs() < 1e-12);
        assert!((c.c_exact.powi(2) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(clt_norming(&[], 10).is_err());
        assert!(clt_norming(&[(1.0, 0.0)], 10).is_err());
        assert!(clt_norming(&[(1.0, 1.0)], 0).is_err());
    }
}
