use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, Poisson, StandardNormal};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::marginals::{Law, MarginalFamily};

/// Whether a draw is exact in law or comes from an approximating surrogate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Approximate,
}

impl Exactness {
    /// Approximate if either side is.
    pub fn and(self, other: Exactness) -> Exactness {
        if self == Exactness::Exact && other == Exactness::Exact {
            Exactness::Exact
        } else {
            Exactness::Approximate
        }
    }
}

/// One innovation draw `W` with its exactness flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Innovation {
    pub value: f64,
    pub exactness: Exactness,
}

fn gamma_dist(shape: f64, scale: f64) -> Result<Gamma<f64>> {
    Gamma::new(shape, scale).map_err(|e| invalid(format!("gamma sampler: {e}")))
}

/// Inverse Gaussian draw with the given mean and shape, using the
/// transformation-with-multiple-roots method. The smaller root is formed as
/// `4 μ l y / (y + s)²` to avoid cancellation when the shape is tiny.
fn inverse_gaussian_draw<R: Rng + ?Sized>(mean: f64, shape: f64, rng: &mut R) -> f64 {
    let v: f64 = rng.sample(StandardNormal);
    let y = mean * v * v;
    let s = (y * y + 4.0 * shape * y).sqrt();
    let root = if y == 0.0 { mean } else { mean * 4.0 * shape * y / ((y + s) * (y + s)) };
    let u: f64 = rng.random();
    if u * (mean + root) <= mean {
        root
    } else {
        mean * mean / root
    }
}

/// Positive strictly stable draw with Laplace transform `exp(-s^κ)`
/// (Kanter's representation).
fn positive_stable_draw<R: Rng + ?Sized>(kappa: f64, rng: &mut R) -> f64 {
    let u = PI * rng.random::<f64>();
    let e: f64 = rng.sample(Exp1);
    let a = ((kappa * u).sin() / u.sin()).powf(1.0 / (1.0 - kappa)) * ((1.0 - kappa) * u).sin()
        / (kappa * u).sin();
    (a / e).powf((1.0 - kappa) / kappa)
}

/// Sampler for a stationary marginal law, with distribution objects built
/// once.
#[derive(Debug, Clone)]
pub enum StationarySampler {
    Gamma(Gamma<f64>),
    InverseGaussian { mean: f64, shape: f64 },
    VarianceGamma { mixing: Gamma<f64>, mu: f64, drift: f64, vol: f64 },
    NormalInverseGaussian { mean: f64, shape: f64, beta: f64, mu: f64 },
    /// Tempered stable as a sum of `pieces` exponentially tilted stable
    /// variables, each drawn by rejection with acceptance rate at least 1/e.
    TemperedStable { kappa: f64, pieces: u64, scale: f64, tilt: f64 },
}

impl StationarySampler {
    pub fn new(family: &MarginalFamily) -> Result<Self> {
        Ok(match *family.law() {
            Law::Gamma { alpha, beta } => Self::Gamma(gamma_dist(alpha, 1.0 / beta)?),
            Law::InverseGaussian { delta, gamma } => {
                Self::InverseGaussian { mean: delta / gamma, shape: delta * delta }
            }
            Law::VarianceGamma { kappa, alpha, beta, mu } => {
                // X = μ + (2β/γ²) G + sqrt(2G)/γ Z with G ~ Gamma(2κ, 1).
                let g2 = (alpha - beta) * (alpha + beta);
                Self::VarianceGamma {
                    mixing: gamma_dist(2.0 * kappa, 1.0)?,
                    mu,
                    drift: 2.0 * beta / g2,
                    vol: (2.0 / g2).sqrt(),
                }
            }
            Law::NormalInverseGaussian { alpha, beta, delta, mu } => {
                let gamma = ((alpha - beta) * (alpha + beta)).sqrt();
                Self::NormalInverseGaussian { mean: delta / gamma, shape: delta * delta, beta, mu }
            }
            Law::TemperedStable { kappa, delta, gamma } => {
                if kappa == 0.5 {
                    Self::InverseGaussian { mean: delta / gamma, shape: delta * delta }
                } else {
                    let pieces = (delta * gamma).ceil().max(1.0) as u64;
                    let part = delta / pieces as f64;
                    Self::TemperedStable {
                        kappa,
                        pieces,
                        scale: 2.0 * part.powf(1.0 / kappa),
                        tilt: 0.5 * gamma.powf(1.0 / kappa),
                    }
                }
            }
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Gamma(ref g) => g.sample(rng),
            Self::InverseGaussian { mean, shape } => inverse_gaussian_draw(mean, shape, rng),
            Self::VarianceGamma { ref mixing, mu, drift, vol } => {
                let g = mixing.sample(rng);
                let z: f64 = rng.sample(StandardNormal);
                mu + drift * g + vol * g.sqrt() * z
            }
            Self::NormalInverseGaussian { mean, shape, beta, mu } => {
                let v = inverse_gaussian_draw(mean, shape, rng);
                let z: f64 = rng.sample(StandardNormal);
                mu + beta * v + v.sqrt() * z
            }
            Self::TemperedStable { kappa, pieces, scale, tilt } => {
                let mut total = 0.0;
                for _ in 0..pieces {
                    loop {
                        let s = scale * positive_stable_draw(kappa, rng);
                        let u: f64 = rng.random();
                        if u <= (-tilt * s).exp() {
                            total += s;
                            break;
                        }
                    }
                }
                total
            }
        }
    }
}

/// One draw from the stationary marginal law. Exact for every family.
pub fn sample_stationary<R: Rng + ?Sized>(family: &MarginalFamily, rng: &mut R) -> Result<f64> {
    Ok(StationarySampler::new(family)?.sample(rng))
}

/// Shifted difference of two independent gammas, used as a moment-matched
/// stand-in for innovation laws without an exact scheme here.
#[derive(Debug, Clone)]
pub struct Surrogate {
    shift: f64,
    positive: Option<Gamma<f64>>,
    negative: Option<Gamma<f64>>,
    normal_sd: f64,
}

impl Surrogate {
    /// Matches the first four cumulants with equal scales where possible,
    /// otherwise the first three with a one-sided shifted gamma.
    fn fit(k: [f64; 4]) -> Result<Self> {
        let [k1, k2, k3, k4] = k;
        let mut positive = None;
        let mut negative = None;
        let mut normal_sd = 0.0;
        let mut mean = 0.0;
        let bilateral = if k4 > 0.0 {
            let theta = (k4 / (6.0 * k2)).sqrt();
            let total = k2 / (theta * theta);
            let diff = k3 / (2.0 * theta.powi(3));
            (diff.abs() < total).then_some((theta, 0.5 * (total + diff), 0.5 * (total - diff)))
        } else {
            None
        };
        if let Some((theta, up, down)) = bilateral {
            positive = Some(gamma_dist(up, theta)?);
            negative = Some(gamma_dist(down, theta)?);
            mean = (up - down) * theta;
        } else if k3 != 0.0 {
            let theta = (k3 / (2.0 * k2)).abs();
            let shape = k2 / (theta * theta);
            let g = Some(gamma_dist(shape, theta)?);
            if k3 > 0.0 {
                positive = g;
                mean = shape * theta;
            } else {
                negative = g;
                mean = -shape * theta;
            }
        } else {
            normal_sd = k2.sqrt();
        }
        Ok(Self { shift: k1 - mean, positive, negative, normal_sd })
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut x = self.shift;
        if let Some(g) = &self.positive {
            x += g.sample(rng);
        }
        if let Some(g) = &self.negative {
            x -= g.sample(rng);
        }
        if self.normal_sd > 0.0 {
            x += self.normal_sd * rng.sample::<f64, _>(StandardNormal);
        }
        x
    }
}

/// Sampler for the innovation `W = X(1) - ρ X(0)` of one component.
#[derive(Debug, Clone)]
pub enum InnovationSampler {
    /// Exact: the Gamma background driving process is compound Poisson with
    /// exponential jumps, so `W = Σ ρ^{U_i} J_i` over `N ~ Poisson(α ln(1/ρ))`
    /// jumps at uniform times.
    GammaCompoundPoisson { intensity: f64, beta: f64, log_rho: f64 },
    /// Approximate: cumulant-matched surrogate.
    Surrogate(Surrogate),
}

impl InnovationSampler {
    pub fn new(family: &MarginalFamily, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(invalid(format!("rho must lie in (0,1), got {rho}")));
        }
        if let Law::Gamma { alpha, beta } = *family.law() {
            return Ok(Self::GammaCompoundPoisson {
                intensity: -alpha * rho.ln(),
                beta,
                log_rho: rho.ln(),
            });
        }
        let mut k = [0.0; 4];
        for (i, slot) in k.iter_mut().enumerate() {
            let m = i as i32 + 1;
            *slot = family.cumulant(m as u32)? * (1.0 - rho.powi(m));
        }
        Ok(Self::Surrogate(Surrogate::fit(k)?))
    }

    pub fn exactness(&self) -> Exactness {
        match self {
            Self::GammaCompoundPoisson { .. } => Exactness::Exact,
            Self::Surrogate(_) => Exactness::Approximate,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::GammaCompoundPoisson { intensity, beta, log_rho } => {
                let count = poisson_draw(*intensity, rng);
                let mut w = 0.0;
                for _ in 0..count {
                    let u: f64 = rng.random();
                    let j: f64 = rng.sample::<f64, _>(Exp1) / beta;
                    w += (u * log_rho).exp() * j;
                }
                w
            }
            Self::Surrogate(s) => s.sample(rng),
        }
    }
}

/// Poisson count; zero for a non-positive mean.
pub(crate) fn poisson_draw<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    match Poisson::new(mean) {
        Ok(p) => p.sample(rng) as u64,
        Err(_) => 0,
    }
}

/// One innovation draw for a component with marginal `family` and lag-one
/// autocorrelation `rho`.
pub fn sample_innovation<R: Rng + ?Sized>(
    family: &MarginalFamily,
    rho: f64,
    rng: &mut R,
) -> Result<Innovation> {
    let sampler = InnovationSampler::new(family, rho)?;
    Ok(Innovation { value: sampler.sample(rng), exactness: sampler.exactness() })
}
