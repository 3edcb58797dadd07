use rand::Rng;
use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::parallel::ordered_map;
use crate::simulate::RngStream;

const BOOTSTRAP_RESAMPLES: usize = 200;
const MIN_SAMPLES: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

/// A statistic with a 95% percentile-bootstrap interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Statistic {
    pub value: f64,
    pub ci95: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalityReport {
    pub sample_size: usize,
    pub skewness: Statistic,
    pub excess_kurtosis: Statistic,
    pub ks_distance: Statistic,
    /// Asymptotic 1% critical value of the KS distance.
    pub ks_critical_1pct: f64,
}

impl NormalityReport {
    pub fn ks_rejects(&self) -> bool {
        self.ks_distance.value > self.ks_critical_1pct
    }
}

/// 1% critical value of the one-sample KS distance, Stephens' form.
pub fn ks_critical_value(n: usize) -> f64 {
    let r = (n as f64).sqrt();
    1.628 / (r + 0.12 + 0.11 / r)
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// (skewness, excess kurtosis, KS distance) of one sample.
fn statistics(xs: &[f64], standardize: bool) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in xs {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    let skew = m3 / m2.powf(1.5);
    let kurt = m4 / (m2 * m2) - 3.0;
    let (shift, scale) = if standardize { (mean, m2.sqrt()) } else { (0.0, 1.0) };
    let mut z: Vec<f64> = xs.iter().map(|x| (x - shift) / scale).collect();
    z.sort_by(|a, b| a.total_cmp(b));
    let ks = z
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = std_normal_cdf(x);
            (((i + 1) as f64 / n) - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max);
    (skew, kurt, ks)
}

fn percentile_interval(mut values: Vec<f64>) -> Interval {
    values.sort_by(|a, b| a.total_cmp(b));
    let at = |p: f64| {
        let pos = p * (values.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        values[lo] + (pos - lo as f64) * (values[hi] - values[lo])
    };
    Interval { lower: at(0.025), upper: at(0.975) }
}

/// Skewness, excess kurtosis and KS distance to N(0,1) with bootstrap
/// intervals from 200 resamples keyed on `seed`.
///
/// With `standardize` the KS distance is taken after centring and scaling by
/// the sample mean and standard deviation; without it the samples are
/// assumed already normalised (for example by a theoretical norming).
pub fn normality_diagnostics(samples: &[f64], standardize: bool, seed: u64) -> Result<NormalityReport> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { required: MIN_SAMPLES, actual: samples.len() });
    }
    let (skew, kurt, ks) = statistics(samples, standardize);
    let boots = ordered_map(BOOTSTRAP_RESAMPLES, |b| {
        let mut rng = RngStream::new(seed, b as u64);
        let resample: Vec<f64> =
            (0..samples.len()).map(|_| samples[rng.random_range(0..samples.len())]).collect();
        statistics(&resample, standardize)
    });
    let stat = |value: f64, pick: fn(&(f64, f64, f64)) -> f64| Statistic {
        value,
        ci95: percentile_interval(boots.iter().map(pick).collect()),
    };
    Ok(NormalityReport {
        sample_size: samples.len(),
        skewness: stat(skew, |t| t.0),
        excess_kurtosis: stat(kurt, |t| t.1),
        ks_distance: stat(ks, |t| t.2),
        ks_critical_1pct: ks_critical_value(samples.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Exp1, StandardNormal};

    #[test]
    fn normal_sample_passes() {
        let mut rng = RngStream::new(1, 0);
        let xs: Vec<f64> = (0..10_000).map(|_| rng.sample(StandardNormal)).collect();
        let r = normality_diagnostics(&xs, false, 3).unwrap();
        assert!(!r.ks_rejects());
        assert!(r.skewness.value.abs() < 0.1);
        assert!(r.skewness.ci95.lower < 0.0 && r.skewness.ci95.upper > 0.0);
    }

    #[test]
    fn exponential_sample_is_skewed() {
        let mut rng = RngStream::new(2, 0);
        let xs: Vec<f64> = (0..10_000).map(|_| rng.sample(Exp1)).collect();
        let r = normality_diagnostics(&xs, true, 3).unwrap();
        assert!((r.skewness.value - 2.0).abs() < 0.3);
        assert!(r.ks_rejects());
    }

    #[test]
    fn too_small_rejected() {
        assert!(normality_diagnostics(&[0.0; 499], true, 0).is_err());
    }
}
