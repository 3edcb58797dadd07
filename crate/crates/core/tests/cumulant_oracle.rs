//! Exact partial-sum cumulants against brute-force oracles that do not use
//! the a-recursion.

use supou::analytics::{
    covariance, exact_cumulant, exact_cumulant_components, exact_cumulants,
    partial_sum_variance_exact, Component, SupouSpec,
};
use supou::MarginalFamily;

fn gamma_spec(lambda: f64, hurst: f64, beta: f64, k_max: usize) -> SupouSpec {
    SupouSpec::new(lambda, hurst, MarginalFamily::gamma(1.0, beta).unwrap(), k_max).unwrap()
}

/// Σ_k κ_m(X_k) [b^m + (1-ρ^m) Σ_s a_s^m] with b and a_s formed as explicit
/// power sums of ρ.
fn direct_sum(spec: &SupouSpec, m: u32, n: usize) -> f64 {
    let cm = spec.unit_cumulant(m).unwrap();
    let mut total = 0.0;
    for k in 1..=spec.k_max() {
        let rho = spec.rho(k);
        let b: f64 = (1..=n).map(|i| rho.powi(i as i32)).sum();
        let mut s = 0.0;
        for j in 0..n {
            let a: f64 = (0..=j).map(|i| rho.powi(i as i32)).sum();
            s += a.powi(m as i32);
        }
        total += cm * spec.weight(k) * (b.powi(m as i32) + (1.0 - rho.powi(m as i32)) * s);
    }
    total
}

/// Σ over all m-tuples of times of the joint cumulant
/// κ_m ρ^{Σ_i (t_i - min t)} of an OU type component.
fn tuple_sum(spec: &SupouSpec, m: u32, n: usize) -> f64 {
    let cm = spec.unit_cumulant(m).unwrap();
    let mut total = 0.0;
    for k in 1..=spec.k_max() {
        let rho = spec.rho(k);
        let mut acc = 0.0;
        let count = n.pow(m);
        for code in 0..count {
            let mut c = code;
            let mut t = [0usize; 4];
            for slot in t.iter_mut().take(m as usize) {
                *slot = c % n;
                c /= n;
            }
            let t = &t[..m as usize];
            let lo = *t.iter().min().unwrap();
            acc += rho.powi(t.iter().map(|&x| (x - lo) as i32).sum());
        }
        total += cm * spec.weight(k) * acc;
    }
    total
}

#[test]
fn golden_third_cumulant() {
    // Gamma(β=1), H=0.75, λ=1, k_max=2, n=4; reference evaluated in
    // 40-digit arithmetic by two independent summations.
    const GOLDEN: f64 = 35.270_001_193_326_63;
    let spec = gamma_spec(1.0, 0.75, 1.0, 2);
    let value = exact_cumulant(&spec, 3, 4).unwrap().truncated;
    assert!((value - GOLDEN).abs() < 1e-13 * GOLDEN, "{value}");
    assert!((direct_sum(&spec, 3, 4) - GOLDEN).abs() < 1e-13 * GOLDEN);
}

#[test]
fn recursion_matches_direct_and_tuple_sums() {
    for &(h, lambda, beta) in &[(0.6, 0.5, 1.0), (0.75, 1.0, 2.0), (0.9, 2.0, 0.5)] {
        for k_max in [1, 7, 32] {
            let spec = gamma_spec(lambda, h, beta, k_max);
            for n in [1, 2, 5, 11] {
                for m in 2..=4 {
                    let fast = exact_cumulant(&spec, m, n).unwrap().truncated;
                    let tuples = tuple_sum(&spec, m, n);
                    let direct = direct_sum(&spec, m, n);
                    assert!(((fast - tuples) / tuples).abs() < 1e-12, "m={m} n={n}");
                    assert!(((fast - direct) / direct).abs() < 1e-12, "m={m} n={n}");
                }
            }
        }
    }
}

#[test]
fn higher_orders_match_direct_sum() {
    let spec = gamma_spec(1.0, 0.7, 1.0, 20);
    let orders = [5, 6, 8, 12];
    let values = exact_cumulants(&spec, &orders, 40).unwrap();
    for (&m, v) in orders.iter().zip(values) {
        let direct = direct_sum(&spec, m, 40);
        assert!(((v.truncated - direct) / direct).abs() < 1e-11, "m={m}");
    }
}

#[test]
fn variance_from_covariance_double_sum() {
    for &h in &[0.55, 0.8, 0.95] {
        let spec = gamma_spec(1.0, h, 1.0, 300);
        for n in [1, 16, 300] {
            let a = exact_cumulant(&spec, 2, n).unwrap();
            let b = partial_sum_variance_exact(&spec, n).unwrap();
            assert!(((a.truncated - b.truncated) / b.truncated).abs() < 1e-10);
            assert!(((a.total() - b.total()) / b.total()).abs() < 1e-8);
            // Direct double sum of the covariance.
            let mut direct = 0.0;
            for i in 0..n {
                for j in 0..n {
                    direct += covariance(&spec, i.abs_diff(j) as f64).unwrap().truncated;
                }
            }
            assert!(((direct - b.truncated) / direct).abs() < 1e-11);
        }
    }
}

#[test]
fn tail_estimate_tracks_omitted_components() {
    for &h in &[0.6, 0.75, 0.9] {
        let small = gamma_spec(1.0, h, 1.0, 64);
        let large = small.with_k_max(64 * 256).unwrap();
        for m in 2..=4 {
            let n = 128;
            let s = exact_cumulant(&small, m, n).unwrap();
            let l = exact_cumulant(&large, m, n).unwrap();
            let omitted = l.total() - s.truncated;
            assert!(((s.tail - omitted) / omitted).abs() < 1e-3, "H={h} m={m}");
        }
    }
}

#[test]
fn component_list_matches_spec_route() {
    let spec = gamma_spec(1.3, 0.7, 1.5, 25);
    let comps = spec.components().unwrap();
    for m in 2..=5 {
        let a = exact_cumulant(&spec, m, 50).unwrap().truncated;
        let b = exact_cumulant_components(&comps, m, 50).unwrap();
        assert!(((a - b) / a).abs() < 1e-12);
    }
    let single = [Component::new(MarginalFamily::inverse_gaussian(1.0, 1.0).unwrap(), 0.4).unwrap()];
    assert!(exact_cumulant_components(&single, 3, 10).unwrap() > 0.0);
}

#[test]
fn invalid_inputs_rejected() {
    let spec = gamma_spec(1.0, 0.75, 1.0, 4);
    assert!(exact_cumulant(&spec, 1, 10).is_err());
    assert!(exact_cumulant(&spec, 2, 0).is_err());
    let err = SupouSpec::new(1.0, 0.5, MarginalFamily::gamma(1.0, 1.0).unwrap(), 4).unwrap_err();
    assert_eq!(err.to_string(), "invalid parameter: hurst out of (0.5,1)");
}
