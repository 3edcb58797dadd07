use serde::Serialize;

use super::jackknife_se;
use crate::error::{domain, Error, Result};

/// An unbiased k-statistic with its jackknife standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KStatistic {
    pub m: u32,
    pub value: f64,
    pub std_error: f64,
    pub sample_size: usize,
}

/// k-statistic from power sums `s[r] = Σ x^r` of `n` values.
fn from_power_sums(m: u32, n: f64, s1: f64, s2: f64, s3: f64, s4: f64) -> f64 {
    match m {
        1 => s1 / n,
        2 => (n * s2 - s1 * s1) / (n * (n - 1.0)),
        3 => {
            (2.0 * s1.powi(3) - 3.0 * n * s1 * s2 + n * n * s3)
                / (n * (n - 1.0) * (n - 2.0))
        }
        _ => {
            (n * n * (n + 1.0) * s4 - 4.0 * n * (n + 1.0) * s1 * s3
                - 3.0 * n * (n - 1.0) * s2 * s2
                + 12.0 * n * s1 * s1 * s2
                - 6.0 * s1.powi(4))
                / (n * (n - 1.0) * (n - 2.0) * (n - 3.0))
        }
    }
}

/// Unbiased estimator of the `m`-th cumulant (`1 ≤ m ≤ 4`) of an iid sample.
///
/// Needs at least 10 values for `m ≤ 2` and 100 for `m ∈ {3, 4}`. Data are
/// centred at the sample mean first (k-statistics of order ≥ 2 are shift
/// invariant), and the leave-one-out values for the jackknife are formed by
/// downdating the power sums, so the whole computation is O(n).
pub fn k_statistic(samples: &[f64], m: u32) -> Result<KStatistic> {
    if !(1..=4).contains(&m) {
        return Err(domain(format!("k-statistic order must be 1..=4, got {m}")));
    }
    let required = if m <= 2 { 10 } else { 100 };
    if samples.len() < required {
        return Err(Error::InsufficientSamples { required, actual: samples.len() });
    }
    let n = samples.len() as f64;
    let centre = samples.iter().sum::<f64>() / n;
    let (mut s1, mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0, 0.0);
    for &x in samples {
        let d = x - centre;
        let d2 = d * d;
        s1 += d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    let value = from_power_sums(m, n, s1, s2, s3, s4);
    let value = if m == 1 { value + centre } else { value };
    let loo: Vec<f64> = samples
        .iter()
        .map(|&x| {
            let d = x - centre;
            let d2 = d * d;
            from_power_sums(m, n - 1.0, s1 - d, s2 - d2, s3 - d2 * d, s4 - d2 * d2)
        })
        .collect();
    Ok(KStatistic { m, value, std_error: jackknife_se(&loo), sample_size: samples.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sample_has_zero_variance() {
        let k = k_statistic(&[5.0; 20], 2).unwrap();
        assert_eq!(k.value, 0.0);
    }

    #[test]
    fn two_point_sample_variance() {
        let xs: Vec<f64> = (0..20).map(|i| if i % 2 == 0 { -1.0 } else { 1.0 }).collect();
        let k = k_statistic(&xs, 2).unwrap();
        assert!((k.value - 20.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn size_minimums() {
        assert!(matches!(
            k_statistic(&[1.0; 9], 2),
            Err(Error::InsufficientSamples { required: 10, actual: 9 })
        ));
        assert!(k_statistic(&[1.0; 99], 3).is_err());
        assert!(k_statistic(&[1.0; 100], 4).is_ok());
        assert!(k_statistic(&[1.0; 100], 5).is_err());
    }

    #[test]
    fn third_and_fourth_orders_match_direct_formulas() {
        // Small sample against formulas in terms of central moments.
        let xs: Vec<f64> = (0..150).map(|i| ((i * 37 % 101) as f64).powf(1.3) / 10.0).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let m = |r: i32| xs.iter().map(|x| (x - mean).powi(r)).sum::<f64>() / n;
        let k3 = n * n / ((n - 1.0) * (n - 2.0)) * m(3);
        let k4 = n * n * ((n + 1.0) * m(4) - 3.0 * (n - 1.0) * m(2).powi(2))
            / ((n - 1.0) * (n - 2.0) * (n - 3.0));
        assert!((k_statistic(&xs, 3).unwrap().value / k3 - 1.0).abs() < 1e-12);
        assert!((k_statistic(&xs, 4).unwrap().value / k4 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jackknife_of_mean_is_classical_standard_error() {
        let xs: Vec<f64> = (0..50).map(|i| (i as f64 * 0.7).sin()).collect();
        let n = xs.len() as f64;
        let k2 = k_statistic(&xs, 2).unwrap().value;
        let se = k_statistic(&xs, 1).unwrap().std_error;
        assert!((se - (k2 / n).sqrt()).abs() < 1e-12);
    }
}
