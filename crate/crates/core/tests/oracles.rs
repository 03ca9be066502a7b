//! Library results against independent oracles computed here.

mod common;

use chernoff_core::heat::{
    erfc, heat_binomial_coefficients, heat_exact, heat_exact_quadrature, heat_sin_error,
};
use chernoff_core::measure::measure_power;
use chernoff_core::transport::transport_sin_error_exact;
use chernoff_core::{HeatParams, HeatScheme, InitialCondition, PowerLawScheme};
use num_bigint::BigUint;

#[test]
fn erfc_matches_adaptive_quadrature() {
    let mut worst: f64 = 0.0;
    for i in 0..=260 {
        let x = i as f64 * 0.1;
        let want = common::erfc_quadrature(x);
        let rel = (erfc(x) - want).abs() / want;
        worst = worst.max(rel);
        assert!(rel < 1e-12, "x = {x}: {} vs {want}, rel {rel:e}", erfc(x));
        let neg = 2.0 - want;
        assert!((erfc(-x) - neg).abs() < 1e-12 * neg, "x = -{x}");
    }
    eprintln!("erfc worst relative deviation from quadrature: {worst:e}");
}

#[test]
fn erfc_agrees_with_libm() {
    for i in -500..=2600 {
        let x = i as f64 * 0.01;
        let want = libm::erfc(x);
        assert!(
            (erfc(x) - want).abs() <= 1e-14 * want,
            "x = {x}: {} vs {want}",
            erfc(x)
        );
    }
}

/// Poisson integral of `exp(−|y|)` against the Gaussian kernel, by adaptive
/// Simpson on each side of the kink.
fn poisson_expabs(t: f64, x: f64) -> f64 {
    let kernel = |y: f64| {
        (-(x - y).powi(2) / (4.0 * t)).exp() / (2.0 * (std::f64::consts::PI * t).sqrt())
    };
    let f = |y: f64| kernel(y) * (-y.abs()).exp();
    let reach = 14.0 * t.sqrt();
    let (lo, hi) = (x - reach, x + reach);
    let mut total = 0.0;
    if lo < 0.0 {
        total += common::adaptive_simpson(&f, lo, hi.min(0.0), 1e-14);
    }
    if hi > 0.0 {
        total += common::adaptive_simpson(&f, lo.max(0.0), hi, 1e-14);
    }
    total
}

#[test]
fn expabs_solution_matches_poisson_integral() {
    let p = HeatParams::default();
    for x in [-4.0, -1.3, 0.0, 0.7, 3.5] {
        for t in [0.25, 1.0, 2.0] {
            let closed = heat_exact(&InitialCondition::ExpAbs, &p, t, x).unwrap();
            let oracle = poisson_expabs(t, x);
            assert!((closed - oracle).abs() < 1e-8, "t={t} x={x}: {closed} vs {oracle}");
            let library_quad = heat_exact_quadrature(&InitialCondition::ExpAbs, &p, t, x).unwrap();
            assert!((library_quad - oracle).abs() < 1e-8);
        }
    }
}

fn pascal_row(m: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = vec![1u128; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row
}

/// Coefficients of `(z + 1/z + c)^n` by repeated polynomial multiplication.
fn laurent_power(c: u128, n: usize) -> Vec<u128> {
    let mut poly = vec![1u128];
    for _ in 0..n {
        let mut next = vec![0u128; poly.len() + 2];
        for (i, &v) in poly.iter().enumerate() {
            next[i] += v;
            next[i + 1] += c * v;
            next[i + 2] += v;
        }
        poly = next;
    }
    poly
}

#[test]
fn exact_tables_match_integer_oracles() {
    for n in 1..=30usize {
        let g1 = heat_binomial_coefficients(HeatScheme::G1, n as u64).unwrap();
        let row = pascal_row(2 * n);
        let g2 = heat_binomial_coefficients(HeatScheme::G2, n as u64).unwrap();
        let beta = laurent_power(4, n);
        for p in -(n as i64)..=(n as i64) {
            let idx = (p + n as i64) as usize;
            assert_eq!(g1.coefficient(p), BigUint::from(row[idx]), "alpha n={n} p={p}");
            assert_eq!(g2.coefficient(p), BigUint::from(beta[idx]), "beta n={n} p={p}");
        }
        assert_eq!(g1.sum(), BigUint::from(4u32).pow(n as u32));
        assert_eq!(g2.sum(), BigUint::from(6u32).pow(n as u32));
    }
}

#[test]
fn engine_weights_match_exact_tables() {
    let p = HeatParams::default();
    for kind in [HeatScheme::G1, HeatScheme::G2] {
        for n in 1..=30u64 {
            let table = heat_binomial_coefficients(kind, n).unwrap();
            let m = chernoff_core::heat::heat_chernoff_measure(kind, &p, 0.3).unwrap();
            let engine = measure_power(&m, n).unwrap();
            let weights: Vec<f64> = engine.atoms().iter().map(|a| a.weight).collect();
            let exact = table.normalized_weights();
            assert_eq!(weights.len(), exact.len(), "{kind} n={n}");
            for (w, e) in weights.iter().zip(&exact) {
                assert!((w - e).abs() < 1e-12, "{kind} n={n}: {w} vs {e}");
            }
        }
    }
}

#[test]
fn sin_error_closed_forms_against_direct_formulas() {
    let s = PowerLawScheme::new(1.0, 1.0).unwrap();
    for n in 1..=100u64 {
        let want = 2.0 * (1.0 / (2.0 * n as f64)).sin();
        assert!((transport_sin_error_exact(&s, 1.0, n).unwrap() - want).abs() < 1e-15);
    }
    // G1 multiplier is cos²(a√(t/n)); compare against powi for small n
    let p = HeatParams::default();
    for n in 1..=20u64 {
        let m = (2.0 / n as f64).sqrt().cos().powi(2);
        let want = (m.powi(n as i32) - (-2.0f64).exp()).abs();
        let got = heat_sin_error(HeatScheme::G1, &p, 2.0, n).unwrap();
        assert!((got - want).abs() < 1e-14, "n={n}: {got} vs {want}");
    }
}
