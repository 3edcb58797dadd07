//! Self-decomposable marginal laws and their cumulants.
//!
//! Every family here is closed under convolution in one "δ-like" parameter,
//! and all cumulants of order two and higher are proportional to it. The
//! proportionality constants `C_m` drive every downstream formula.
//!
//! Cumulant transforms are written in the variable `u = iζ`, so that
//! `κ(ζ) = log E exp{iζX}` equals `f(u) = log E exp{uX}` and the m-th cumulant
//! is the m-th derivative of `f` at zero. The strip of analyticity is an
//! interval for `Re u = -Im ζ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};

/// Parameters of a marginal law. Construct a validated [`MarginalFamily`]
/// with [`MarginalFamily::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Law {
    /// Γ(α, β) with shape α and rate β.
    Gamma { alpha: f64, beta: f64 },
    /// IG(δ, γ) with cumulant transform δ(γ - √(γ² - 2u)).
    InverseGaussian { delta: f64, gamma: f64 },
    /// VG(κ, α, β, μ).
    VarianceGamma { kappa: f64, alpha: f64, beta: f64, mu: f64 },
    /// NIG(α, β, δ, μ).
    NormalInverseGaussian { alpha: f64, beta: f64, delta: f64, mu: f64 },
    /// Positive tempered stable TS(κ, δ, γ).
    TemperedStable { kappa: f64, delta: f64, gamma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Gamma,
    InverseGaussian,
    VarianceGamma,
    NormalInverseGaussian,
    TemperedStable,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Gamma => "gamma",
            FamilyKind::InverseGaussian => "inverse_gaussian",
            FamilyKind::VarianceGamma => "variance_gamma",
            FamilyKind::NormalInverseGaussian => "normal_inverse_gaussian",
            FamilyKind::TemperedStable => "tempered_stable",
        }
    }
}

/// A validated marginal law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MarginalFamily(Law);

/// Distance to the negative real axis below which a log/sqrt argument is
/// treated as sitting on the branch cut.
const BRANCH_CUT_GUARD: f64 = 1e-10;

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite, got {v}")))
    }
}

impl MarginalFamily {
    pub fn new(law: Law) -> Result<Self> {
        match law {
            Law::Gamma { alpha, beta } => {
                positive("gamma alpha", alpha)?;
                positive("gamma beta", beta)?;
            }
            Law::InverseGaussian { delta, gamma } => {
                positive("inverse gaussian delta", delta)?;
                positive("inverse gaussian gamma", gamma)?;
            }
            Law::VarianceGamma { kappa, alpha, beta, mu } => {
                positive("variance gamma kappa", kappa)?;
                finite("variance gamma beta", beta)?;
                finite("variance gamma mu", mu)?;
                positive("variance gamma alpha", alpha)?;
                if alpha <= beta.abs() {
                    return Err(invalid(format!(
                        "variance gamma requires alpha > |beta|, got alpha={alpha}, beta={beta}"
                    )));
                }
            }
            Law::NormalInverseGaussian { alpha, beta, delta, mu } => {
                positive("nig delta", delta)?;
                finite("nig beta", beta)?;
                finite("nig mu", mu)?;
                positive("nig alpha", alpha)?;
                if alpha <= beta.abs() {
                    return Err(invalid(format!(
                        "nig requires alpha > |beta| for finite cumulants, got alpha={alpha}, beta={beta}"
                    )));
                }
            }
            Law::TemperedStable { kappa, delta, gamma } => {
                positive("tempered stable delta", delta)?;
                positive("tempered stable gamma", gamma)?;
                if !(kappa > 0.0 && kappa < 1.0) {
                    return Err(invalid(format!(
                        "tempered stable kappa must lie in (0,1), got {kappa}"
                    )));
                }
            }
        }
        Ok(Self(law))
    }

    pub fn gamma(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Law::Gamma { alpha, beta })
    }

    pub fn inverse_gaussian(delta: f64, gamma: f64) -> Result<Self> {
        Self::new(Law::InverseGaussian { delta, gamma })
    }

    pub fn variance_gamma(kappa: f64, alpha: f64, beta: f64, mu: f64) -> Result<Self> {
        Self::new(Law::VarianceGamma { kappa, alpha, beta, mu })
    }

    pub fn normal_inverse_gaussian(alpha: f64, beta: f64, delta: f64, mu: f64) -> Result<Self> {
        Self::new(Law::NormalInverseGaussian { alpha, beta, delta, mu })
    }

    pub fn tempered_stable(kappa: f64, delta: f64, gamma: f64) -> Result<Self> {
        Self::new(Law::TemperedStable { kappa, delta, gamma })
    }

    pub fn law(&self) -> &Law {
        &self.0
    }

    pub fn kind(&self) -> FamilyKind {
        match self.0 {
            Law::Gamma { .. } => FamilyKind::Gamma,
            Law::InverseGaussian { .. } => FamilyKind::InverseGaussian,
            Law::VarianceGamma { .. } => FamilyKind::VarianceGamma,
            Law::NormalInverseGaussian { .. } => FamilyKind::NormalInverseGaussian,
            Law::TemperedStable { .. } => FamilyKind::TemperedStable,
        }
    }

    /// The convolution parameter to which cumulants of order ≥ 2 are
    /// proportional (Gamma: α, IG: δ, VG: κ, NIG: δ, TS: δ).
    pub fn scale_param(&self) -> f64 {
        match self.0 {
            Law::Gamma { alpha, .. } => alpha,
            Law::InverseGaussian { delta, .. } => delta,
            Law::VarianceGamma { kappa, .. } => kappa,
            Law::NormalInverseGaussian { delta, .. } => delta,
            Law::TemperedStable { delta, .. } => delta,
        }
    }

    /// Same law with the δ-like parameter replaced; location is untouched.
    pub fn with_scale_param(&self, value: f64) -> Result<Self> {
        let law = match self.0 {
            Law::Gamma { beta, .. } => Law::Gamma { alpha: value, beta },
            Law::InverseGaussian { gamma, .. } => Law::InverseGaussian { delta: value, gamma },
            Law::VarianceGamma { alpha, beta, mu, .. } => {
                Law::VarianceGamma { kappa: value, alpha, beta, mu }
            }
            Law::NormalInverseGaussian { alpha, beta, mu, .. } => {
                Law::NormalInverseGaussian { alpha, beta, delta: value, mu }
            }
            Law::TemperedStable { kappa, gamma, .. } => {
                Law::TemperedStable { kappa, delta: value, gamma }
            }
        };
        Self::new(law)
    }

    /// The law whose cumulant transform is `factor` times this one: the
    /// δ-like parameter and the location μ (VG, NIG) are both multiplied.
    pub fn convolution_power(&self, factor: f64) -> Result<Self> {
        positive("convolution factor", factor)?;
        let law = match self.0 {
            Law::Gamma { alpha, beta } => Law::Gamma { alpha: alpha * factor, beta },
            Law::InverseGaussian { delta, gamma } => {
                Law::InverseGaussian { delta: delta * factor, gamma }
            }
            Law::VarianceGamma { kappa, alpha, beta, mu } => Law::VarianceGamma {
                kappa: kappa * factor,
                alpha,
                beta,
                mu: mu * factor,
            },
            Law::NormalInverseGaussian { alpha, beta, delta, mu } => Law::NormalInverseGaussian {
                alpha,
                beta,
                delta: delta * factor,
                mu: mu * factor,
            },
            Law::TemperedStable { kappa, delta, gamma } => {
                Law::TemperedStable { kappa, delta: delta * factor, gamma }
            }
        };
        Self::new(law)
    }

    /// Open interval `(lo, hi)` of `Re u = -Im ζ` on which the cumulant
    /// transform is analytic.
    pub fn strip(&self) -> (f64, f64) {
        match self.0 {
            Law::Gamma { beta, .. } => (f64::NEG_INFINITY, beta),
            Law::InverseGaussian { gamma, .. } => (f64::NEG_INFINITY, 0.5 * gamma * gamma),
            Law::VarianceGamma { alpha, beta, .. } | Law::NormalInverseGaussian { alpha, beta, .. } => {
                (-(alpha + beta), alpha - beta)
            }
            Law::TemperedStable { kappa, gamma, .. } => {
                (f64::NEG_INFINITY, 0.5 * gamma.powf(1.0 / kappa))
            }
        }
    }

    /// Cumulant transform `log E exp{iζX}` for complex ζ inside the strip.
    pub fn cgf(&self, zeta: Complex64) -> Result<Complex64> {
        if !(zeta.re.is_finite() && zeta.im.is_finite()) {
            return Err(domain(format!("cgf argument must be finite, got {zeta}")));
        }
        let u = Complex64::i() * zeta;
        let (lo, hi) = self.strip();
        if !(u.re > lo && u.re < hi) {
            return Err(domain(format!(
                "zeta = {zeta} outside the strip of analyticity (-Im zeta must lie in ({lo}, {hi}))"
            )));
        }
        let one = Complex64::new(1.0, 0.0);
        let value = match self.0 {
            Law::Gamma { alpha, beta } => -alpha * principal_ln(one - u / beta)?,
            Law::InverseGaussian { delta, gamma } => {
                delta * (gamma - principal_sqrt(gamma * gamma - 2.0 * u)?)
            }
            Law::VarianceGamma { kappa, alpha, beta, mu } => {
                // 2κ log(γ² / (α² - (β+u)²)) with γ² = α² - β², factored so
                // each logarithm stays in the right half-plane on the strip.
                let left = principal_ln(one - u / (alpha - beta))?;
                let right = principal_ln(one + u / (alpha + beta))?;
                mu * u - 2.0 * kappa * (left + right)
            }
            Law::NormalInverseGaussian { alpha, beta, delta, mu } => {
                let g = (alpha * alpha - beta * beta).sqrt();
                let w = beta + u;
                mu * u + delta * (g - principal_sqrt(alpha * alpha - w * w)?)
            }
            Law::TemperedStable { kappa, delta, gamma } => {
                let c = gamma.powf(1.0 / kappa);
                let base = c - 2.0 * u;
                check_branch(base)?;
                delta * gamma - delta * base.powf(kappa)
            }
        };
        Ok(value)
    }

    /// Real log moment generating function `log E exp{uX}` for real `u` in
    /// the strip.
    pub fn log_mgf(&self, u: f64) -> Result<f64> {
        Ok(self.cgf(Complex64::new(0.0, -u))?.re)
    }

    /// The m-th cumulant κ_m (m ≥ 1).
    pub fn cumulant(&self, m: u32) -> Result<f64> {
        if m == 0 {
            return Err(invalid("cumulant order must be at least 1"));
        }
        let mf = m as f64;
        let value = match self.0 {
            Law::Gamma { alpha, beta } => alpha * factorial(m - 1) / beta.powi(m as i32),
            Law::InverseGaussian { delta, gamma } => {
                // δ (2m)! / ((2m-1) m! 2^m γ^{2m-1}) = δ (2m-3)!! / γ^{2m-1}
                let double_factorial: f64 = (1..m).map(|j| (2 * j - 1) as f64).product();
                delta * double_factorial / gamma.powi(2 * m as i32 - 1)
            }
            Law::VarianceGamma { kappa, alpha, beta, mu } => {
                let p = alpha - beta;
                let q = alpha + beta;
                let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
                let shape = 2.0 * kappa * factorial(m - 1) * (p.powi(-(m as i32)) + sign * q.powi(-(m as i32)));
                if m == 1 {
                    mu + shape
                } else {
                    shape
                }
            }
            Law::NormalInverseGaussian { alpha, beta, delta, mu } => {
                let s = sqrt_series(alpha, beta, m as usize);
                let shape = -delta * factorial(m) * s[m as usize];
                if m == 1 {
                    mu + shape
                } else {
                    shape
                }
            }
            Law::TemperedStable { kappa, delta, gamma } => {
                let c = gamma.powf(1.0 / kappa);
                let falling: f64 = (0..m).map(|j| kappa - j as f64).product();
                -delta * gamma * falling * (-2.0 / c).powi(m as i32)
            }
        };
        if !value.is_finite() {
            return Err(Error::Overflow(format!("cumulant of order {mf} is not representable")));
        }
        Ok(value)
    }

    /// Cumulants κ_1..κ_max.
    pub fn cumulants(&self, max_order: u32) -> Result<CumulantVector> {
        let orders: Vec<u32> = (1..=max_order).collect();
        let values = orders.iter().map(|&m| self.cumulant(m)).collect::<Result<Vec<_>>>()?;
        let delta = self.scale_param();
        let per_unit = orders
            .iter()
            .zip(&values)
            .map(|(&m, v)| if m >= 2 { Some(v / delta) } else { None })
            .collect();
        Ok(CumulantVector { orders, values, per_unit })
    }

    /// C_m = κ_m / δ-like parameter, for m ≥ 2.
    pub fn unit_cumulant(&self, m: u32) -> Result<f64> {
        if m < 2 {
            return Err(invalid(format!(
                "unit cumulant requires order >= 2 (the mean is not proportional to the scale parameter), got {m}"
            )));
        }
        Ok(self.cumulant(m)? / self.scale_param())
    }

    pub fn mean(&self) -> f64 {
        self.cumulant(1).expect("first cumulant is finite for validated laws")
    }

    pub fn variance(&self) -> f64 {
        self.cumulant(2).expect("second cumulant is finite for validated laws")
    }
}

/// Cumulants of a law with their per-unit (δ-normalized) values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantVector {
    pub orders: Vec<u32>,
    pub values: Vec<f64>,
    /// `C_m = κ_m / δ` for m ≥ 2, `None` for the mean.
    pub per_unit: Vec<Option<f64>>,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Taylor coefficients s_0..s_n of √(α² - (β+u)²) = √(γ² - 2βu - u²) at u = 0.
fn sqrt_series(alpha: f64, beta: f64, n: usize) -> Vec<f64> {
    let g = (alpha * alpha - beta * beta).sqrt();
    let h = |k: usize| match k {
        1 => -2.0 * beta,
        2 => -1.0,
        _ => 0.0,
    };
    let mut s = vec![0.0; n + 1];
    s[0] = g;
    for k in 1..=n {
        let conv: f64 = (1..k).map(|i| s[i] * s[k - i]).sum();
        s[k] = (h(k) - conv) / (2.0 * g);
    }
    s
}

fn check_branch(z: Complex64) -> Result<()> {
    if z.re <= 0.0 && z.im.abs() <= BRANCH_CUT_GUARD * z.norm().max(f64::MIN_POSITIVE) {
        return Err(domain(format!("argument {z} lies on the branch cut")));
    }
    Ok(())
}

fn principal_ln(z: Complex64) -> Result<Complex64> {
    check_branch(z)?;
    Ok(z.ln())
}

fn principal_sqrt(z: Complex64) -> Result<Complex64> {
    check_branch(z)?;
    Ok(z.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn all_families() -> Vec<MarginalFamily> {
        vec![
            MarginalFamily::gamma(1.7, 2.3).unwrap(),
            MarginalFamily::inverse_gaussian(0.8, 1.4).unwrap(),
            MarginalFamily::variance_gamma(1.2, 2.0, 0.5, 0.3).unwrap(),
            MarginalFamily::normal_inverse_gaussian(2.0, -0.7, 1.1, -0.4).unwrap(),
            MarginalFamily::tempered_stable(0.3, 1.5, 1.2).unwrap(),
        ]
    }

    #[test]
    fn cgf_vanishes_at_zero() {
        for fam in all_families() {
            assert!(fam.cgf(c(0.0, 0.0)).unwrap().norm() < 1e-15, "{fam:?}");
        }
        let g = MarginalFamily::gamma(1.0, 1.0).unwrap();
        assert_eq!(g.cgf(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let ig = MarginalFamily::inverse_gaussian(1.0, 2.0).unwrap();
        assert!(ig.cgf(c(0.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn gamma_first_order_coefficient_is_mean() {
        let g = MarginalFamily::gamma(2.0, 1.0).unwrap();
        let h = 1e-5;
        let slope = (g.log_mgf(h).unwrap() - g.log_mgf(-h).unwrap()) / (2.0 * h);
        assert!((slope - 2.0).abs() < 1e-8);
        assert!((g.mean() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_cumulants() {
        let g = MarginalFamily::gamma(3.0, 2.0).unwrap();
        assert!((g.cumulant(2).unwrap() - 0.75).abs() < 1e-15);
        let ig = MarginalFamily::inverse_gaussian(1.0, 1.0).unwrap();
        assert!((ig.cumulant(1).unwrap() - 1.0).abs() < 1e-15);
        // IG variance δ/γ³ and third cumulant 3δ/γ⁵
        let ig = MarginalFamily::inverse_gaussian(2.0, 1.5).unwrap();
        assert!((ig.cumulant(2).unwrap() - 2.0 / 1.5f64.powi(3)).abs() < 1e-14);
        assert!((ig.cumulant(3).unwrap() - 6.0 / 1.5f64.powi(5)).abs() < 1e-14);
    }

    #[test]
    fn nig_known_cumulants() {
        let (alpha, beta, delta, mu) = (2.0, 0.5, 1.3, 0.2);
        let nig = MarginalFamily::normal_inverse_gaussian(alpha, beta, delta, mu).unwrap();
        let g: f64 = (alpha * alpha - beta * beta).sqrt();
        let k1 = mu + delta * beta / g;
        let k2 = delta * alpha * alpha / g.powi(3);
        let k3 = 3.0 * delta * alpha * alpha * beta / g.powi(5);
        let k4 = 3.0 * delta * alpha * alpha * (alpha * alpha + 4.0 * beta * beta) / g.powi(7);
        for (m, want) in [(1, k1), (2, k2), (3, k3), (4, k4)] {
            let got = nig.cumulant(m).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "m={m}: {got} vs {want}");
        }
    }

    #[test]
    fn tempered_stable_half_is_inverse_gaussian() {
        let ts = MarginalFamily::tempered_stable(0.5, 1.3, 0.9).unwrap();
        let ig = MarginalFamily::inverse_gaussian(1.3, 0.9).unwrap();
        for m in 1..=6 {
            let a = ts.cumulant(m).unwrap();
            let b = ig.cumulant(m).unwrap();
            assert!(((a - b) / b).abs() < 1e-13, "m={m}");
        }
        for z in [c(0.4, 0.0), c(-1.0, 0.1), c(2.0, -0.2)] {
            assert!((ts.cgf(z).unwrap() - ig.cgf(z).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn unit_cumulant_examples() {
        let g = MarginalFamily::gamma(5.0, 1.0).unwrap();
        assert!((g.unit_cumulant(3).unwrap() - 2.0).abs() < 1e-14);
        let g = MarginalFamily::gamma(0.3, 2.0).unwrap();
        assert!((g.unit_cumulant(2).unwrap() - 0.25).abs() < 1e-15);
        let ig = MarginalFamily::inverse_gaussian(4.0, 1.0).unwrap();
        assert!((ig.unit_cumulant(2).unwrap() - 1.0).abs() < 1e-15);
        assert!(g.unit_cumulant(1).is_err());
        assert!(g.unit_cumulant(0).is_err());
    }

    #[test]
    fn parameter_domains_enforced() {
        assert!(MarginalFamily::gamma(0.0, 1.0).is_err());
        assert!(MarginalFamily::gamma(1.0, -1.0).is_err());
        assert!(MarginalFamily::inverse_gaussian(1.0, 0.0).is_err());
        assert!(MarginalFamily::variance_gamma(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(MarginalFamily::variance_gamma(1.0, 1.0, 0.0, f64::NAN).is_err());
        assert!(MarginalFamily::normal_inverse_gaussian(1.0, 2.0, 1.0, 0.0).is_err());
        assert!(MarginalFamily::tempered_stable(1.0, 1.0, 1.0).is_err());
        assert!(MarginalFamily::tempered_stable(0.0, 1.0, 1.0).is_err());
        assert!(MarginalFamily::tempered_stable(0.5, 1.0, 1.0).is_ok());
    }

    #[test]
    fn cgf_outside_strip_is_domain_error() {
        let g = MarginalFamily::gamma(1.0, 1.0).unwrap();
        // u = iζ = 1.5 > β
        assert!(matches!(g.cgf(c(0.0, -1.5)), Err(Error::Domain(_))));
        let vg = MarginalFamily::variance_gamma(1.0, 2.0, 0.5, 0.0).unwrap();
        assert!(vg.cgf(c(0.0, 3.0)).is_err());
        assert!(vg.cgf(c(0.0, -1.6)).is_err());
        assert!(vg.cgf(c(0.0, -1.4)).is_ok());
        assert!(g.cgf(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn branch_cut_guard() {
        assert!(principal_ln(c(-2.0, 1e-12)).is_err());
        assert!(principal_sqrt(c(-1.0, 0.0)).is_err());
        assert!(principal_ln(c(-2.0, 1e-3)).is_ok());
    }

    #[test]
    fn real_axis_cgf_is_characteristic_function() {
        // |E e^{iζX}| ≤ 1 on the real axis.
        for fam in all_families() {
            for &x in &[0.3, 1.0, 5.0, 40.0] {
                let v = fam.cgf(c(x, 0.0)).unwrap();
                assert!(v.re <= 1e-12, "{fam:?} at {x}: {v}");
            }
        }
    }

    #[test]
    fn cumulant_vector_per_unit() {
        let g = MarginalFamily::gamma(2.0, 1.0).unwrap();
        let cv = g.cumulants(4).unwrap();
        assert_eq!(cv.orders, vec![1, 2, 3, 4]);
        assert_eq!(cv.per_unit[0], None);
        assert_eq!(cv.per_unit[3], Some(6.0));
    }
}
