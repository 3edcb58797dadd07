use serde::Serialize;

use crate::error::{domain, Result};

/// Sample mean of `|x|^q` with its jackknife standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbsMoment {
    pub q: f64,
    pub value: f64,
    pub std_error: f64,
}

/// Mean of `|x|^q` over the sample. For a sample mean the leave-one-out
/// jackknife reduces to the classical `sd/√n`, which is what is computed.
pub fn empirical_abs_moment(samples: &[f64], q: f64) -> Result<AbsMoment> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(domain(format!("moment order must be positive, got {q}")));
    }
    if samples.is_empty() {
        return Err(domain("empty sample"));
    }
    let pow = |x: f64| {
        let a = x.abs();
        if q == 2.0 {
            a * a
        } else if q == 4.0 {
            (a * a) * (a * a)
        } else {
            a.powf(q)
        }
    };
    let n = samples.len() as f64;
    let value = samples.iter().map(|&x| pow(x)).sum::<f64>() / n;
    let std_error = if samples.len() > 1 {
        let ss: f64 = samples.iter().map(|&x| (pow(x) - value).powi(2)).sum();
        (ss / (n - 1.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(AbsMoment { q, value, std_error })
}

/// Raw moments `E X^1..E X^q` from cumulants `κ_1..κ_q` by
/// `μ_r = Σ_{k=1}^{r} C(r-1, k-1) κ_k μ_{r-k}`.
pub fn moments_from_cumulants(cumulants: &[f64]) -> Vec<f64> {
    let q = cumulants.len();
    let mut mu = vec![1.0; q + 1];
    for r in 1..=q {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for k in 1..=r {
            acc += binom * cumulants[k - 1] * mu[r - k];
            binom = binom * (r - k) as f64 / k as f64;
        }
        mu[r] = acc;
    }
    mu.remove(0);
    mu
}
