//! Heat semigroup for `u_t = a² u_xx` on the real line and three Chernoff
//! functions for it, each a convex combination of shifts:
//!
//! | scheme | atoms |
//! |--------|-------|
//! | G1 | `±2a√t` (1/4 each), `0` (1/2) |
//! | G2 | `±a√(6t)` (1/6 each), `0` (2/3) |
//! | G3 | `±a√(12t)` (1/30 each), `±a√(2t)` (3/10 each), `0` (1/3) |
//!
//! On `sin` every scheme acts as multiplication by a scalar, which gives the
//! closed forms in [`heat_sin_composed_closed_form`].

mod coefficients;
mod erfc;
mod quadrature;

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use coefficients::{
    binomial, closed_sum_coefficient, heat_binomial_coefficients, ExactCoefficientTable,
};
pub use erfc::{erf, erfc};
pub use quadrature::{piecewise_simpson, simpson};

use crate::error::{Error, Result};
use crate::func::InitialCondition;
use crate::measure::ShiftMeasure;

/// Thermal conductivity coefficient `a > 0` of `u_t = a² u_xx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatParams {
    a: f64,
}

impl HeatParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("heat coefficient a must be > 0, got {a}")));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

impl Default for HeatParams {
    fn default() -> Self {
        Self { a: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeatScheme {
    G1,
    G2,
    G3,
}

impl HeatScheme {
    pub const ALL: [HeatScheme; 3] = [HeatScheme::G1, HeatScheme::G2, HeatScheme::G3];

    /// Order of convergence on smooth data.
    pub fn smooth_order(&self) -> u32 {
        match self {
            HeatScheme::G1 => 1,
            HeatScheme::G2 => 2,
            HeatScheme::G3 => 3,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            HeatScheme::G1 => "g1",
            HeatScheme::G2 => "g2",
            HeatScheme::G3 => "g3",
        }
    }

    /// `(offset, weight)` pairs of `G(t)`.
    pub fn atoms(&self, params: &HeatParams, t: f64) -> Vec<(f64, f64)> {
        let a = params.a;
        match self {
            HeatScheme::G1 => {
                let s = 2.0 * a * t.sqrt();
                vec![(-s, 0.25), (0.0, 0.5), (s, 0.25)]
            }
            HeatScheme::G2 => {
                let s = a * (6.0 * t).sqrt();
                vec![(-s, 1.0 / 6.0), (0.0, 2.0 / 3.0), (s, 1.0 / 6.0)]
            }
            HeatScheme::G3 => {
                let far = a * (12.0 * t).sqrt();
                let near = a * (2.0 * t).sqrt();
                vec![
                    (-far, 1.0 / 30.0),
                    (-near, 0.3),
                    (0.0, 1.0 / 3.0),
                    (near, 0.3),
                    (far, 1.0 / 30.0),
                ]
            }
        }
    }

    /// `m − 1` where `m` is the multiplier of `G(s)` on `sin`, written with
    /// `cos θ − 1 = −2 sin²(θ/2)` so small arguments keep full precision.
    fn sin_multiplier_minus_one(&self, params: &HeatParams, s: f64) -> f64 {
        let a = params.a;
        let half_sin_sq = |theta: f64| (theta / 2.0).sin().powi(2);
        match self {
            // cos²(a√s) − 1
            HeatScheme::G1 => -(a * s.sqrt()).sin().powi(2),
            // (2 + cos(a√(6s)))/3 − 1
            HeatScheme::G2 => -2.0 * half_sin_sq(a * (6.0 * s).sqrt()) / 3.0,
            // (5 + cos(a√(12s)) + 9 cos(a√(2s)))/15 − 1
            HeatScheme::G3 => {
                -(2.0 * half_sin_sq(a * (12.0 * s).sqrt())
                    + 18.0 * half_sin_sq(a * (2.0 * s).sqrt()))
                    / 15.0
            }
        }
    }

    /// Scalar `m^n` with `(G(t/n))^n sin = m^n · sin`.
    pub fn sin_multiplier(&self, params: &HeatParams, t: f64, n: u64) -> f64 {
        let s = t / n as f64;
        let dm = self.sin_multiplier_minus_one(params, s);
        if dm > -1.0 {
            (n as f64 * dm.ln_1p()).exp()
        } else {
            (1.0 + dm).powf(n as f64)
        }
    }
}

impl fmt::Display for HeatScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn check_positive_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("time must be finite and positive, got {t}")))
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("time must be finite and non-negative, got {t}")))
    }
}

/// `Φ(t, x) = exp(−x²/(4a²t)) / (2a√(πt))`
pub fn heat_kernel(p: &HeatParams, t: f64, x: f64) -> Result<f64> {
    check_positive_time(t)?;
    Ok(kernel(p.a, t, x))
}

#[inline]
fn kernel(a: f64, t: f64, x: f64) -> f64 {
    (-x * x / (4.0 * a * a * t)).exp() / (2.0 * a * (PI * t).sqrt())
}

/// `e^{−a²t} sin x`
pub fn heat_exact_sin(p: &HeatParams, t: f64, x: f64) -> Result<f64> {
    check_time(t)?;
    Ok((-p.a * p.a * t).exp() * x.sin())
}

/// Exact solution for `u0 = exp(−|x|)`, `a = 1`:
/// `e^{t−x}(1 − ½erfc(x/(2√t) − √t)) + e^{t+x}·½erfc(x/(2√t) + √t)`.
///
/// Evaluated at `|x|` with `1 − ½erfc(z) = ½erfc(−z)`, which keeps both
/// terms free of cancellation.
pub fn heat_exact_expabs(t: f64, x: f64) -> Result<f64> {
    check_positive_time(t)?;
    if !x.is_finite() {
        return Err(Error::domain(format!("solution evaluated at {x}")));
    }
    let x = x.abs();
    let rt = t.sqrt();
    let z = x / (2.0 * rt);
    let left = 0.5 * (t - x).exp() * erfc(rt - z);
    let right = if z + rt > 27.5 {
        0.0
    } else {
        0.5 * (t + x).exp() * erfc(z + rt)
    };
    Ok(left + right)
}

/// Poisson integral `∫ Φ(t, x − y) u0(y) dy` over `|y − x| ≤ 12a√t`, by
/// composite Simpson split at the kinks of `u0`.
pub fn heat_exact_quadrature(u0: &InitialCondition, p: &HeatParams, t: f64, x: f64) -> Result<f64> {
    check_positive_time(t)?;
    if !x.is_finite() {
        return Err(Error::domain(format!("solution evaluated at {x}")));
    }
    let a = p.a;
    let half_width = 12.0 * a * t.sqrt();
    let sigma = a * (2.0 * t).sqrt();
    let max_step = (sigma / 200.0).min(0.005);
    Ok(piecewise_simpson(
        |y| kernel(a, t, x - y) * u0.value(y),
        x - half_width,
        x + half_width,
        u0.kinks(),
        max_step,
    ))
}

/// Exact solution of the heat problem for any supported initial condition:
/// closed forms where available, the Poisson integral otherwise.
pub fn heat_exact(u0: &InitialCondition, p: &HeatParams, t: f64, x: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return u0.eval(x);
    }
    match u0 {
        InitialCondition::Sin => heat_exact_sin(p, t, x),
        InitialCondition::ExpAbs if p.a == 1.0 => heat_exact_expabs(t, x),
        _ => heat_exact_quadrature(u0, p, t, x),
    }
}

/// Atomic measure of `G(t)`; the identity at `t = 0`.
pub fn heat_chernoff_measure(s: HeatScheme, p: &HeatParams, t: f64) -> Result<ShiftMeasure> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(ShiftMeasure::identity());
    }
    ShiftMeasure::from_atoms(s.atoms(p, t))
}

/// `((G(t/n))^n sin)(x)` in closed form: `m^n · sin x` with
/// `m = cos²(a√(t/n))`, `(2 + cos(a√(6t/n)))/3` or
/// `(5 + cos(a√(12t/n)) + 9cos(a√(2t/n)))/15`.
pub fn heat_sin_composed_closed_form(
    kind: HeatScheme,
    p: &HeatParams,
    t: f64,
    n: u64,
    x: f64,
) -> Result<f64> {
    check_time(t)?;
    if n == 0 {
        return Err(Error::domain("composition degree must be at least 1"));
    }
    Ok(kind.sin_multiplier(p, t, n) * x.sin())
}

/// Closed-form sup-norm error on `sin`: `|m^n − e^{−a²t}|`.
pub fn heat_sin_error(kind: HeatScheme, p: &HeatParams, t: f64, n: u64) -> Result<f64> {
    check_time(t)?;
    if n == 0 {
        return Err(Error::domain("composition degree must be at least 1"));
    }
    Ok((kind.sin_multiplier(p, t, n) - (-p.a * p.a * t).exp()).abs())
}

/// Limit of `n · error` for G1 on `sin`: `e^{−a²t} · a⁴t²/6`.
///
/// The bare `a⁴t²/6` form of this constant misses the `e^{−a²t}` factor;
/// at `a = 1, t = 2` the two differ by a factor of about 7.4.
pub fn g1_sin_leading_coefficient(p: &HeatParams, t: f64) -> f64 {
    let a2t = p.a * p.a * t;
    (-a2t).exp() * a2t * a2t / 6.0
}
