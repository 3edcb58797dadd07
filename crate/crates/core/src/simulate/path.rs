use rand::Rng;
use serde::Serialize;

use super::samplers::{poisson_draw, Exactness, InnovationSampler, StationarySampler};
use crate::analytics::Component;
use crate::error::{invalid, Result};
use crate::marginals::Law;

/// One simulated path of the superposition at times `1..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathSample {
    pub replication_id: u64,
    /// `Y(i)` for `i = 1..=n`.
    pub values: Vec<f64>,
    /// `S(i) - i E[Y]` for `i = 1..=n`.
    pub centered_partial_sums: Vec<f64>,
    /// Analytic stationary mean `E[Y]`.
    pub mean: f64,
    pub exactness: Exactness,
}

#[derive(Debug, Clone)]
enum Driver {
    /// Event-driven Gamma innovations: jumps of the compound Poisson driver
    /// over the whole horizon are placed directly, so the cost scales with
    /// the number of jumps rather than with `n`.
    GammaJumps { intensity: f64, beta: f64 },
    Steps(InnovationSampler),
}

#[derive(Debug, Clone)]
struct Prepared {
    rate: f64,
    rho: f64,
    mean: f64,
    stationary: StationarySampler,
    driver: Driver,
}

impl Prepared {
    fn new(component: &Component) -> Result<Self> {
        let rho = component.rho();
        let driver = match *component.family.law() {
            Law::Gamma { alpha, beta } => {
                Driver::GammaJumps { intensity: alpha * component.rate, beta }
            }
            _ => Driver::Steps(InnovationSampler::new(&component.family, rho)?),
        };
        Ok(Self {
            rate: component.rate,
            rho,
            mean: component.family.mean(),
            stationary: StationarySampler::new(&component.family)?,
            driver,
        })
    }

    fn exactness(&self) -> Exactness {
        match &self.driver {
            Driver::GammaJumps { .. } => Exactness::Exact,
            Driver::Steps(s) => s.exactness(),
        }
    }

    /// Draws `X(0)` and feeds every innovation contribution `(j, w)` with
    /// `j in 1..=n` to `emit`. Both the path and the terminal routes go through
    /// here, so they consume the random stream identically.
    fn drive<R: Rng + ?Sized>(
        &self,
        n: usize,
        rng: &mut R,
        mut emit: impl FnMut(usize, f64),
    ) -> f64 {
        let x0 = self.stationary.sample(rng);
        match &self.driver {
            Driver::GammaJumps { intensity, beta } => {
                let horizon = n as f64;
                let count = poisson_draw(intensity * horizon, rng);
                for _ in 0..count {
                    let t = horizon * (1.0 - rng.random::<f64>());
                    let size: f64 = rng.sample::<f64, _>(rand_distr::Exp1) / beta;
                    let j = (t.ceil() as usize).clamp(1, n);
                    emit(j, size * (-self.rate * (j as f64 - t)).exp());
                }
            }
            Driver::Steps(sampler) => {
                for j in 1..=n {
                    emit(j, sampler.sample(rng));
                }
            }
        }
        x0
    }
}

/// Precomputed samplers for a fixed list of components.
#[derive(Debug, Clone)]
pub struct SuperpositionSampler {
    parts: Vec<Prepared>,
    mean: f64,
    exactness: Exactness,
}

impl SuperpositionSampler {
    pub fn new(components: &[Component]) -> Result<Self> {
        if components.is_empty() {
            return Err(invalid("superposition needs at least one component"));
        }
        let parts = components.iter().map(Prepared::new).collect::<Result<Vec<_>>>()?;
        let mean = parts.iter().map(|p| p.mean).sum();
        let exactness = parts.iter().fold(Exactness::Exact, |e, p| e.and(p.exactness()));
        Ok(Self { parts, mean, exactness })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    /// Full path `Y(1..=n)` with centered partial sums.
    pub fn path<R: Rng + ?Sized>(&self, n: usize, replication_id: u64, rng: &mut R) -> Result<PathSample> {
        check_horizon(n)?;
        let mut values = vec![0.0; n];
        let mut w = vec![0.0; n];
        for part in &self.parts {
            w.iter_mut().for_each(|x| *x = 0.0);
            let mut x = part.drive(n, rng, |j, c| w[j - 1] += c);
            for (y, wj) in values.iter_mut().zip(&w) {
                x = part.rho * x + wj;
                *y += x;
            }
        }
        let mut acc = 0.0;
        let centered_partial_sums = values
            .iter()
            .map(|y| {
                acc += y - self.mean;
                acc
            })
            .collect();
        Ok(PathSample {
            replication_id,
            values,
            centered_partial_sums,
            mean: self.mean,
            exactness: self.exactness,
        })
    }

    /// Centered terminal partial sum `S(n) - n E[Y]` from the same random
    /// draws as [`Self::path`], without storing the path:
    /// `S(n) = ρ a_{n-1} X(0) + Σ_j a_{n-j} W(j)` with `a_s = Σ_{r≤s} ρ^r`.
    pub fn terminal<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<f64> {
        check_horizon(n)?;
        let mut total = 0.0;
        for part in &self.parts {
            // a_s = (1 - ρ^{s+1}) / (1 - ρ), evaluated per contribution so that
            // sparse Gamma jumps cost O(1) each.
            let denom = (-part.rate).exp_m1();
            let a = |s: usize| (-part.rate * (s + 1) as f64).exp_m1() / denom;
            let mut s = 0.0;
            let x0 = part.drive(n, rng, |j, c| s += a(n - j) * c);
            total += part.rho * a(n - 1) * x0 + s;
        }
        Ok(total - n as f64 * self.mean)
    }
}

fn check_horizon(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("horizon n must be at least 1"));
    }
    Ok(())
}

/// Simulates one path of the superposition of `components` over `1..=n`.
pub fn simulate_superposition<R: Rng + ?Sized>(
    components: &[Component],
    n: usize,
    rng: &mut R,
) -> Result<PathSample> {
    SuperpositionSampler::new(components)?.path(n, 0, rng)
}

/// Centered terminal partial sum `S(n) - n E[Y]` and its exactness flag.
pub fn simulate_terminal<R: Rng + ?Sized>(
    components: &[Component],
    n: usize,
    rng: &mut R,
) -> Result<(f64, Exactness)> {
    let sampler = SuperpositionSampler::new(components)?;
    Ok((sampler.terminal(n, rng)?, sampler.exactness()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marginals::MarginalFamily;
    use crate::simulate::RngStream;

    fn components() -> Vec<Component> {
        vec![
            Component::new(MarginalFamily::gamma(1.0, 1.0).unwrap(), 0.3).unwrap(),
            Component::new(MarginalFamily::gamma(0.5, 2.0).unwrap(), 0.05).unwrap(),
            Component::new(MarginalFamily::inverse_gaussian(1.0, 1.0).unwrap(), 1.0).unwrap(),
        ]
    }

    #[test]
    fn terminal_route_matches_path_route() {
        let sampler = SuperpositionSampler::new(&components()).unwrap();
        for n in [1, 2, 17, 300] {
            let path = sampler.path(n, 0, &mut RngStream::new(5, n as u64)).unwrap();
            let terminal = sampler.terminal(n, &mut RngStream::new(5, n as u64)).unwrap();
            let last = *path.centered_partial_sums.last().unwrap();
            assert!((last - terminal).abs() < 1e-9 * (1.0 + last.abs()), "n={n}");
        }
    }

    #[test]
    fn exactness_reflects_components() {
        let s = SuperpositionSampler::new(&components()).unwrap();
        assert_eq!(s.exactness(), Exactness::Approximate);
        let s = SuperpositionSampler::new(&components()[..2]).unwrap();
        assert_eq!(s.exactness(), Exactness::Exact);
    }

    #[test]
    fn empty_superposition_is_rejected() {
        assert!(SuperpositionSampler::new(&[]).is_err());
    }

    #[test]
    fn gamma_path_is_nonnegative() {
        let p = simulate_superposition(&components()[..2], 500, &mut RngStream::new(3, 0)).unwrap();
        assert!(p.values.iter().all(|&y| y >= 0.0));
        assert_eq!(p.values.len(), 500);
    }
}
