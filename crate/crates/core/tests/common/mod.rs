//! Property checks shared by the property tests and the acceptance suite.
//! Each returns `Err` with the minimal failing input on the first failure.

#![allow(dead_code)]

use chernoff_core::analysis::ErrorRecord;
use chernoff_core::heat::{self, erfc, heat_kernel, simpson};
use chernoff_core::measure::{MeasureAction, DEFAULT_ATOM_CAP};
use chernoff_core::transport::transport_exact;
use chernoff_core::{
    loglog_fit, HeatParams, HeatScheme, InitialCondition, ShiftMeasure, Tabulated,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub const CASES: u32 = 256;

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn measure_strategy() -> impl Strategy<Value = ShiftMeasure> {
    prop::collection::vec((-3.0f64..3.0, 0.01f64..1.0), 1..6).prop_map(|atoms| {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        ShiftMeasure::from_atoms(atoms.into_iter().map(|(o, w)| (o, w / total))).unwrap()
    })
}

pub fn initial_strategy() -> impl Strategy<Value = InitialCondition> {
    prop_oneof![
        Just(InitialCondition::Sin),
        Just(InitialCondition::ExpAbs),
        prop::collection::vec(-2.0f64..2.0, 2..12).prop_map(|ys| {
            let xs = (0..ys.len()).map(|i| i as f64 - 3.0).collect();
            InitialCondition::Tabulated(Tabulated::new(xs, ys).unwrap())
        }),
    ]
}

fn heat_scheme_strategy() -> impl Strategy<Value = HeatScheme> {
    prop_oneof![Just(HeatScheme::G1), Just(HeatScheme::G2), Just(HeatScheme::G3)]
}

/// `sup |(G^n u0)| ≤ sup |u0|` for random convex shift measures and heat schemes.
pub fn contraction() -> Result<(), String> {
    run(
        (measure_strategy(), initial_strategy(), 1u64..9, -6.0f64..6.0),
        |(m, u0, n, x)| {
            let p = m.power(n, DEFAULT_ATOM_CAP).unwrap();
            let bound = u0.sup_abs() * (1.0 + 1e-12);
            for k in 0..20 {
                let y = x + 0.37 * k as f64;
                prop_assert!(MeasureAction::new(&p, &u0).value(y).abs() <= bound);
                prop_assert!(p.apply(&u0, y).abs() <= bound);
            }
            Ok(())
        },
    )?;
    run(
        (heat_scheme_strategy(), initial_strategy(), 0.01f64..4.0, 1u64..40, -5.0f64..5.0),
        |(kind, u0, t, n, x)| {
            let params = HeatParams::default();
            let m = heat::heat_chernoff_measure(kind, &params, t / n as f64)
                .unwrap()
                .power(n, DEFAULT_ATOM_CAP)
                .unwrap();
            prop_assert!(m.apply(&u0, x).abs() <= u0.sup_abs() * (1.0 + 1e-12));
            Ok(())
        },
    )
}

/// Weights sum to one, so constants are fixed points.
pub fn constant_preservation() -> Result<(), String> {
    run(
        (measure_strategy(), 1u64..12, -100.0f64..100.0, -5.0f64..5.0),
        |(m, n, c, x)| {
            let p = m.power(n, DEFAULT_ATOM_CAP).unwrap();
            prop_assert!((p.weight_sum() - 1.0).abs() < 1e-12);
            let u0 = InitialCondition::Tabulated(Tabulated::constant(c));
            prop_assert!((p.apply(&u0, x) - c).abs() <= 1e-12 * c.abs().max(1.0));
            Ok(())
        },
    )?;
    run(
        (heat_scheme_strategy(), 0.0f64..5.0, 0.1f64..3.0, 1u64..64),
        |(kind, t, a, n)| {
            let params = HeatParams::new(a).unwrap();
            let m = heat::heat_chernoff_measure(kind, &params, t / n as f64)
                .unwrap()
                .power(n, DEFAULT_ATOM_CAP)
                .unwrap();
            prop_assert!((m.weight_sum() - 1.0).abs() < 1e-12);
            Ok(())
        },
    )
}

/// `m^{j+k} = m^j ⊛ m^k`, compared through the action on two test functions.
pub fn convolution_semigroup() -> Result<(), String> {
    run(
        (measure_strategy(), 1u64..7, 1u64..7, -4.0f64..4.0),
        |(m, j, k, x)| {
            let whole = m.power(j + k, DEFAULT_ATOM_CAP).unwrap();
            let split = m
                .power(j, DEFAULT_ATOM_CAP)
                .unwrap()
                .convolve(&m.power(k, DEFAULT_ATOM_CAP).unwrap(), DEFAULT_ATOM_CAP)
                .unwrap();
            for u0 in [InitialCondition::Sin, InitialCondition::ExpAbs] {
                prop_assert!((whole.apply(&u0, x) - split.apply(&u0, x)).abs() < 1e-12);
            }
            prop_assert!((whole.weight_sum() - split.weight_sum()).abs() < 1e-12);
            Ok(())
        },
    )
}

/// Exact power laws `C/n^q` are recovered: slope `−q`, intercept `log10 C`.
pub fn regression_recovery() -> Result<(), String> {
    run(
        (-3.0f64..3.0, 0.2f64..4.0, 1u64..16, 4u32..10),
        |(log_c, q, lo, doublings)| {
            let c = 10f64.powf(log_c);
            let records: Vec<ErrorRecord> = (0..=doublings)
                .map(|i| {
                    let n = lo << i;
                    ErrorRecord {
                        n,
                        t: 1.0,
                        measured_error: c / (n as f64).powf(q),
                        closed_form_error: None,
                        scheme: "synthetic".into(),
                        initial: "none".into(),
                        grid: "none".into(),
                    }
                })
                .collect();
            let fit = loglog_fit(&records, 1).unwrap();
            prop_assert!((fit.slope + q).abs() < 1e-10, "slope {} for q {}", fit.slope, q);
            prop_assert!((fit.intercept - log_c).abs() < 1e-10);
            Ok(())
        },
    )
}

/// `V(s)V(t) = V(s + t)` for the translation semigroup.
pub fn transport_semigroup() -> Result<(), String> {
    run(
        (initial_strategy(), 0.0f64..3.0, 0.0f64..3.0, -6.0f64..6.0),
        |(u0, s, t, x)| {
            let composed = transport_exact(&u0, s, x + t).unwrap();
            let direct = transport_exact(&u0, s + t, x).unwrap();
            prop_assert!((composed - direct).abs() < 1e-12);
            Ok(())
        },
    )
}

/// `∫ Φ(t, x) dx = 1`.
pub fn kernel_normalization() -> Result<(), String> {
    run((0.2f64..3.0, 0.01f64..5.0), |(a, t)| {
        let p = HeatParams::new(a).unwrap();
        let half = 16.0 * a * t.sqrt();
        let mass = simpson(|x| heat_kernel(&p, t, x).unwrap(), -half, half, 4000);
        prop_assert!((mass - 1.0).abs() < 1e-10, "mass {}", mass);
        Ok(())
    })
}

/// `erfc(x) + erfc(−x) = 2`.
pub fn erfc_symmetry() -> Result<(), String> {
    run(-30.0f64..30.0, |x| {
        prop_assert!((erfc(x) + erfc(-x) - 2.0).abs() < 1e-12);
        Ok(())
    })
}

pub type Check = fn() -> Result<(), String>;

pub const ALL: &[(&str, Check)] = &[
    ("contraction", contraction),
    ("constant preservation", constant_preservation),
    ("convolution semigroup law", convolution_semigroup),
    ("power-law regression recovery", regression_recovery),
    ("transport semigroup law", transport_semigroup),
    ("heat kernel normalization", kernel_normalization),
    ("erfc symmetry", erfc_symmetry),
];

/// Adaptive Simpson with a relative tolerance, used as the erfc oracle.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rel_tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(lo), f(hi), f(0.5 * (lo + hi)));
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    // scale the tolerance by a first estimate of the integral
    let scale = simpson(f, lo, hi, 64).abs().max(f64::MIN_POSITIVE);
    rec(f, lo, hi, fa, fm, fb, whole, rel_tol * scale, 48)
}

/// `erfc(x) = (2/√π) ∫_x^∞ e^{−y²} dy` for `x ≥ 0` by adaptive quadrature.
/// The upper limit drops a relative tail below `e^{−40}`.
pub fn erfc_quadrature(x: f64) -> f64 {
    assert!(x >= 0.0);
    let len = 40.0 / (2.0 * x + 1.0) + 1.0 / (x + 1.0);
    let upper = x + len.min(10.0);
    let scale = (-x * x).exp();
    // integrate e^{−(y² − x²)} to keep the integrand O(1), then rescale
    let f = move |y: f64| (-(y - x) * (y + x)).exp();
    2.0 / std::f64::consts::PI.sqrt() * scale * adaptive_simpson(&f, x, upper, 1e-15)
}
