//! Gamma, incomplete gamma and Riemann zeta functions on the real line.
//!
//! Gamma and the incomplete gamma function delegate to `statrs`; zeta is an
//! Euler–Maclaurin summation.

use crate::error::{domain, Result};

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("gamma requires x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Lower incomplete gamma function γ(a, x) = ∫₀ˣ e^{-s} s^{a-1} ds (not
/// regularized). Accepts x = 0 and x = +∞.
pub fn lower_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(domain(format!("incomplete gamma requires a > 0, got {a}")));
    }
    if x.is_nan() || x < 0.0 {
        return Err(domain(format!("incomplete gamma requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let full = statrs::function::gamma::gamma(a);
    if x.is_infinite() {
        return Ok(full);
    }
    // For small x the series x^a/a (1 - a x/(a+1) + ...) avoids the
    // regularized form losing digits to Γ(a) P(a, x).
    if x < 1e-3 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut k = 1.0;
        loop {
            term *= -x * (a + k - 1.0) / (k * (a + k));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
            k += 1.0;
        }
        return Ok(x.powf(a) * sum);
    }
    Ok(full * statrs::function::gamma::gamma_lr(a, x))
}

// B_{2j} / (2j)! for j = 1..=9.
const BERNOULLI_OVER_FACTORIAL: [f64; 9] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
];

/// Riemann zeta ζ(s) for real s > 1.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s.is_finite() && s > 1.0) {
        return Err(domain(format!("zeta requires s > 1, got {s}")));
    }
    const N: usize = 24;
    let n = N as f64;
    // Head summed from the smallest term upward.
    let head: f64 = (1..N).rev().map(|k| (k as f64).powf(-s)).sum();
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // Rising factorial s (s+1) ... (s+2j-2) times N^{-s-2j+1}.
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (j, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if j > 0 {
            let jf = j as f64;
            rising *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf);
            power /= n * n;
        }
        tail += coef * rising * power;
    }
    Ok(head + tail)
}
