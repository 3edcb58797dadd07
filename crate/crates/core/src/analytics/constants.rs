//! Asymptotic cumulant constants `D_m = D_{m,I} + D_{m,II}` in the L*
//! convention:
//!
//! ```text
//! D_{m,I}  = (C_m/C_2) ∫_{[0,1]^m} (x_1+…+x_m)^{-a} dx
//! D_{m,II} = (C_m/C_2) m ∫_0^1 ∫_{[0,1-x]^{m-1}} (Σy)^{-a} - (Σy + 1 - x)^{-a} dy dx
//! ```
//!
//! with `a = 2(1-H)`. Both integrals have closed forms through the m-th
//! forward difference of the m-fold antiderivative of `s^{-a}`; quadrature
//! gives an independent check.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::marginals::MarginalFamily;
use crate::quadrature::{halton_mean, tanh_sinh, Estimate};

pub const MIN_ORDER: u32 = 2;
pub const MAX_ORDER: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticConstant {
    pub m: u32,
    pub hurst: f64,
    /// C_m / C_2 of the family.
    pub cumulant_ratio: f64,
    pub part_i: f64,
    pub part_ii: f64,
    pub total: f64,
}

fn check(m: u32, hurst: f64) -> Result<()> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&m) {
        return Err(invalid(format!("asymptotic constant order must lie in 2..=6, got {m}")));
    }
    if !(hurst > 0.5 && hurst < 1.0) {
        return Err(invalid("hurst out of (0.5,1)"));
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `∫_{[0,1]^p} (z_1+…+z_p + c)^{-a} dz` via
/// `Σ_k (-1)^{p-k} C(p,k) (k+c)^{p-a} / Π_{j=1}^p (j-a)`.
fn cube_power_integral(p: u32, c: f64, a: f64) -> f64 {
    let denom: f64 = (1..=p).map(|j| j as f64 - a).product();
    let mut sum = 0.0;
    for k in 0..=p {
        let sign = if (p - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let base = k as f64 + c;
        if base > 0.0 {
            sum += sign * binomial(p, k) * base.powf(p as f64 - a);
        }
    }
    sum / denom
}

/// Closed-form `(∫ part I, ∫ part II)` without the C_m/C_2 factor.
fn unit_integrals(m: u32, a: f64) -> (f64, f64) {
    let part_i = cube_power_integral(m, 0.0, a);
    let inner = cube_power_integral(m - 1, 0.0, a) - cube_power_integral(m - 1, 1.0, a);
    let part_ii = m as f64 / (m as f64 - a) * inner;
    (part_i, part_ii)
}

/// `D_m` for 2 ≤ m ≤ 6 from the closed forms.
pub fn asymptotic_constant(m: u32, hurst: f64, family: &MarginalFamily) -> Result<AsymptoticConstant> {
    check(m, hurst)?;
    let ratio = family.unit_cumulant(m)? / family.unit_cumulant(2)?;
    let (i, ii) = unit_integrals(m, 2.0 * (1.0 - hurst));
    Ok(AsymptoticConstant {
        m,
        hurst,
        cumulant_ratio: ratio,
        part_i: ratio * i,
        part_ii: ratio * ii,
        total: ratio * (i + ii),
    })
}

/// Quadrature estimates of the two integrals (without C_m/C_2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureCheck {
    pub m: u32,
    pub part_i: f64,
    pub part_ii: f64,
    /// Combined error estimate for part_i + part_ii.
    pub error: f64,
}

impl QuadratureCheck {
    pub fn total(&self) -> f64 {
        self.part_i + self.part_ii
    }
}

const QMC_COARSE: u64 = 1 << 16;
const QMC_FINE: u64 = 1 << 18;

/// Numerical evaluation of the D_m integrals: nested tanh-sinh for m = 2,
/// Halton quasi-Monte Carlo at two point counts for m ≥ 3 (the error is the
/// difference between the two). Fails when the error estimate exceeds `tol`.
pub fn asymptotic_integrals_quadrature(m: u32, hurst: f64, tol: f64) -> Result<QuadratureCheck> {
    check(m, hurst)?;
    let a = 2.0 * (1.0 - hurst);
    let (part_i, part_ii) = if m == 2 {
        nested_two_dim(a)
    } else {
        (qmc_part_i(m, a), qmc_part_ii(m, a))
    };
    let error = part_i.error + part_ii.error;
    if !(error <= tol) {
        return Err(Error::Quadrature { error, tolerance: tol });
    }
    Ok(QuadratureCheck { m, part_i: part_i.value, part_ii: part_ii.value, error })
}

fn nested_two_dim(a: f64) -> (Estimate, Estimate) {
    const RTOL: f64 = 1e-11;
    let inner_err = std::cell::Cell::new(0.0f64);
    let part_i = tanh_sinh(
        |x| {
            let e = tanh_sinh(|y| (x + y).powf(-a), 0.0, 1.0, RTOL);
            inner_err.set(inner_err.get().max(e.error));
            e.value
        },
        0.0,
        1.0,
        RTOL,
    );
    let err_i = part_i.error + inner_err.replace(0.0);
    let part_ii = tanh_sinh(
        |x| {
            let e = tanh_sinh(|y| y.powf(-a) - (y + 1.0 - x).powf(-a), 0.0, 1.0 - x, RTOL);
            inner_err.set(inner_err.get().max(e.error));
            e.value
        },
        0.0,
        1.0,
        RTOL,
    );
    let err_ii = 2.0 * (part_ii.error + inner_err.get());
    (
        Estimate { value: part_i.value, error: err_i },
        Estimate { value: 2.0 * part_ii.value, error: err_ii },
    )
}

fn qmc_pair<F: Fn(&[f64]) -> f64 + Copy>(f: F, dim: usize) -> Estimate {
    let coarse = halton_mean(f, dim, QMC_COARSE);
    let fine = halton_mean(f, dim, QMC_FINE);
    Estimate { value: fine, error: (fine - coarse).abs() }
}

fn qmc_part_i(m: u32, a: f64) -> Estimate {
    qmc_pair(|x: &[f64]| x.iter().sum::<f64>().powf(-a), m as usize)
}

fn qmc_part_ii(m: u32, a: f64) -> Estimate {
    // Point (x, z_1..z_{m-1}) of the unit cube maps to y_i = (1-x) z_i with
    // Jacobian (1-x)^{m-1}.
    let jac_power = (m - 1) as i32;
    let e = qmc_pair(
        |p: &[f64]| {
            let x = p[0];
            let width = 1.0 - x;
            let s: f64 = p[1..].iter().map(|z| width * z).sum();
            width.powi(jac_power) * (s.powf(-a) - (s + width).powf(-a))
        },
        m as usize,
    );
    Estimate { value: m as f64 * e.value, error: m as f64 * e.error }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma1() -> MarginalFamily {
        MarginalFamily::gamma(1.0, 1.0).unwrap()
    }

    #[test]
    fn d2_closed_forms() {
        let h = 0.75;
        let d = asymptotic_constant(2, h, &gamma1()).unwrap();
        let part_i = (2f64.powf(2.0 * h) - 2.0) / (2.0 * h * (2.0 * h - 1.0));
        assert!((d.part_i - part_i).abs() < 1e-14);
        assert!((d.part_i - 1.104_569_499_661_586_6).abs() < 1e-12);
        assert!((d.total - 1.0 / (h * (2.0 * h - 1.0))).abs() < 1e-13);
    }

    #[test]
    fn d2_part_i_tends_to_one_as_hurst_tends_to_one() {
        let d = asymptotic_constant(2, 1.0 - 1e-9, &gamma1()).unwrap();
        assert!((d.part_i - 1.0).abs() < 1e-6);
    }

    #[test]
    fn order_and_hurst_validation() {
        assert!(asymptotic_constant(1, 0.7, &gamma1()).is_err());
        assert!(asymptotic_constant(7, 0.7, &gamma1()).is_err());
        assert!(asymptotic_constant(3, 0.5, &gamma1()).is_err());
    }

    #[test]
    fn cumulant_ratio_scales_constant() {
        let d3 = asymptotic_constant(3, 0.8, &gamma1()).unwrap();
        assert!((d3.cumulant_ratio - 2.0).abs() < 1e-15);
        let g2 = MarginalFamily::gamma(1.0, 2.0).unwrap();
        let e3 = asymptotic_constant(3, 0.8, &g2).unwrap();
        assert!((e3.total / d3.total - 0.5).abs() < 1e-14);
    }

    #[test]
    fn quadrature_failure_is_reported() {
        // A tolerance below attainable QMC accuracy must fail loudly.
        let r = asymptotic_integrals_quadrature(4, 0.7, 1e-14);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
