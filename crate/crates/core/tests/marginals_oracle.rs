//! Cumulants of every family against two independent numerical oracles on
//! the cumulant transform: Richardson-extrapolated central differences of the
//! real log-MGF, and the Cauchy integral of the complex transform.

use num_complex::Complex64;
use supou::marginals::{FamilyKind, MarginalFamily};

fn families() -> Vec<MarginalFamily> {
    vec![
        MarginalFamily::gamma(2.0, 1.5).unwrap(),
        MarginalFamily::gamma(0.3, 4.0).unwrap(),
        MarginalFamily::inverse_gaussian(1.0, 2.0).unwrap(),
        MarginalFamily::inverse_gaussian(0.5, 0.8).unwrap(),
        MarginalFamily::variance_gamma(1.5, 2.0, 0.5, 0.1).unwrap(),
        MarginalFamily::variance_gamma(0.7, 3.0, -1.0, -0.4).unwrap(),
        MarginalFamily::normal_inverse_gaussian(2.0, 0.0, 1.0, 0.0).unwrap(),
        MarginalFamily::normal_inverse_gaussian(2.0, 0.7, 1.3, 0.25).unwrap(),
        MarginalFamily::tempered_stable(0.5, 1.0, 2.0).unwrap(),
        MarginalFamily::tempered_stable(0.3, 1.2, 1.5).unwrap(),
        MarginalFamily::tempered_stable(0.8, 0.6, 1.1).unwrap(),
    ]
}

/// Largest radius around 0 inside the strip, with a safety factor.
fn radius(f: &MarginalFamily) -> f64 {
    let (lo, hi) = f.strip();
    0.5 * hi.min(-lo)
}

fn binomial(m: u32, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// m-th derivative at 0 of the real log-MGF by central differences with
/// Richardson extrapolation in h².
/// Steps shrink by 1.25 per level rather than 2: halving amplifies roundoff
/// by 2^m per level, which swamps the sixth derivative.
fn fd_derivative(f: &MarginalFamily, m: u32) -> f64 {
    const LEVELS: usize = 6;
    const Q: f64 = 1.25;
    let h0 = 1.8 * radius(f) / m as f64;
    let diff = |h: f64| {
        let mut acc = 0.0;
        for j in 0..=m {
            let x = (m as f64 / 2.0 - j as f64) * h;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(m, j) * f.log_mgf(x).unwrap();
        }
        acc / h.powi(m as i32)
    };
    let mut table = [[0.0f64; LEVELS]; LEVELS];
    for i in 0..LEVELS {
        table[i][0] = diff(h0 / Q.powi(i as i32));
        for k in 1..=i {
            let factor = (Q * Q).powi(k as i32);
            table[i][k] = table[i][k - 1] + (table[i][k - 1] - table[i - 1][k - 1]) / (factor - 1.0);
        }
    }
    table[LEVELS - 1][LEVELS - 1]
}

/// m-th cumulant as m!/(2π i) ∮ K(u) u^{-m-1} du on a circle, trapezoid rule.
fn cauchy_cumulant(f: &MarginalFamily, m: u32) -> f64 {
    let r = radius(f);
    let points = 512;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..points {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / points as f64;
        let u = Complex64::from_polar(r, theta);
        // K(u) = log E e^{uX} = cgf(ζ) with u = iζ.
        let k = f.cgf(-Complex64::i() * u).unwrap();
        acc += k * Complex64::from_polar(1.0, -(m as f64) * theta);
    }
    let factorial: f64 = (1..=m).map(f64::from).product();
    factorial * acc.re / points as f64 / r.powi(m as i32)
}

#[test]
fn cumulants_match_richardson_differences() {
    for f in families() {
        for m in 1..=6 {
            let exact = f.cumulant(m).unwrap();
            let fd = fd_derivative(&f, m);
            let scale = exact.abs().max(f.cumulant(2).unwrap() * radius(&f).powi(2 - m as i32));
            assert!(
                (fd - exact).abs() <= 1e-6 * scale,
                "{:?} m={m}: closed form {exact}, differences {fd}",
                f.law()
            );
        }
    }
}

#[test]
fn cumulants_match_cauchy_integral() {
    for f in families() {
        for m in 1..=8 {
            let exact = f.cumulant(m).unwrap();
            let c = cauchy_cumulant(&f, m);
            let scale = exact.abs().max(f.cumulant(2).unwrap() * radius(&f).powi(2 - m as i32));
            assert!((c - exact).abs() <= 1e-10 * scale, "{:?} m={m}: {exact} vs {c}", f.law());
        }
    }
}

#[test]
fn nig_symmetric_variance() {
    let f = MarginalFamily::normal_inverse_gaussian(2.0, 0.0, 1.0, 0.0).unwrap();
    let fd = fd_derivative(&f, 2);
    assert!((fd - 0.5).abs() < 1e-8);
    assert!((f.cumulant(2).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn unit_cumulants_invariant_under_scale_parameter() {
    for f in families() {
        for factor in [0.1, 1.0, 10.0] {
            let g = f.with_scale_param(f.scale_param() * factor).unwrap();
            for m in 2..=6 {
                let a = f.unit_cumulant(m).unwrap();
                let b = g.unit_cumulant(m).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs(), "{:?} m={m}", f.kind());
            }
        }
    }
}

#[test]
fn convolution_closure_on_a_grid() {
    for f in families() {
        let split = [0.3, 0.7];
        let r = radius(&f);
        let a = f.convolution_power(split[0]).unwrap();
        let b = f.convolution_power(split[1]).unwrap();
        for j in -4..=4 {
            for s in [-1.0, 0.0, 2.5] {
                // Real direction (moment side) and oscillatory direction.
                let zeta = Complex64::new(s, -r * j as f64 / 5.0);
                let sum = a.cgf(zeta).unwrap() + b.cgf(zeta).unwrap();
                let whole = f.cgf(zeta).unwrap();
                assert!((sum - whole).norm() < 1e-12 * (1.0 + whole.norm()), "{:?}", f.kind());
            }
        }
    }
}

#[test]
fn cgf_vanishes_at_zero_and_rejects_points_outside_strip() {
    for f in families() {
        assert!(f.cgf(Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-15);
        let (_, hi) = f.strip();
        assert!(f.cgf(Complex64::new(0.0, -1.01 * hi)).is_err());
    }
    let g = MarginalFamily::gamma(2.0, 1.0).unwrap();
    assert_eq!(g.cumulant(1).unwrap(), 2.0);
    assert_eq!(g.kind(), FamilyKind::Gamma);
}

