//! Translation semigroup `(e^{tL}u0)(x) = u0(x + t)` and two Chernoff
//! families for it: the power-law distortion `f(x + t + a·t^{k+1})` and the
//! arbitrarily slow `f(x + t + t·w(1/t))` with `w(s) = s^{−γ}`.
//!
//! Both families are single shifts, so the n-th composition degree is again a
//! single shift and the sup-norm error on `sin` has a closed form
//! `2|sin(τ/2)|`, `τ` being the excess shift.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::InitialCondition;
use crate::measure::ShiftMeasure;

/// `(G(t)f)(x) = f(x + t + a·t^{k+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawScheme {
    a: f64,
    k: f64,
}

impl PowerLawScheme {
    pub fn new(a: f64, k: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("power-law amplitude must be > 0, got {a}")));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::domain(format!("power-law exponent must be > 0, got {k}")));
        }
        Ok(Self { a, k })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Shift of a single application, `t + a·t^{k+1}`.
    pub fn step(&self, t: f64) -> f64 {
        t + self.a * t.powf(self.k + 1.0)
    }

    /// `a·t^{k+1}/n^k`, the shift in excess of the exact one after n steps.
    pub fn excess(&self, t: f64, n: u64) -> f64 {
        self.a * t.powf(self.k + 1.0) / (n as f64).powf(self.k)
    }
}

/// `(G(t)f)(x) = f(x + t + t·w(1/t))` with `w(s) = s^{−γ}`, `0 < γ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlowScheme {
    gamma: f64,
}

impl SlowScheme {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::domain(format!("slow-scheme γ must lie in (0, 1), got {gamma}")));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `w(s) = s^{−γ}`
    pub fn w(&self, s: f64) -> f64 {
        s.powf(-self.gamma)
    }

    pub fn step(&self, t: f64) -> f64 {
        if t == 0.0 {
            0.0
        } else {
            t + t * self.w(1.0 / t)
        }
    }

    /// `t·w(n/t) = t^{1+γ}/n^γ`
    pub fn excess(&self, t: f64, n: u64) -> f64 {
        if t == 0.0 {
            0.0
        } else {
            t * self.w(n as f64 / t)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum TransportScheme {
    Power(PowerLawScheme),
    Slow(SlowScheme),
}

impl TransportScheme {
    /// Shift of `(G(t/n))^n`.
    pub fn composed_shift(&self, t: f64, n: u64) -> Result<f64> {
        match self {
            TransportScheme::Power(s) => transport_power_composed(s, t, n),
            TransportScheme::Slow(s) => transport_slow_composed(s, t, n),
        }
    }

    /// One-atom measure of `G(t)`.
    pub fn measure(&self, t: f64) -> Result<ShiftMeasure> {
        check_time(t)?;
        ShiftMeasure::shift(match self {
            TransportScheme::Power(s) => s.step(t),
            TransportScheme::Slow(s) => s.step(t),
        })
    }

    /// Closed-form sup-norm error on `sin`.
    pub fn sin_error(&self, t: f64, n: u64) -> Result<f64> {
        match self {
            TransportScheme::Power(s) => transport_sin_error_exact(s, t, n),
            TransportScheme::Slow(s) => transport_sin_error_slow(s, t, n),
        }
    }

    pub fn id(&self) -> String {
        match self {
            TransportScheme::Power(s) => format!("power:{},{}", s.a, s.k),
            TransportScheme::Slow(s) => format!("slow:{}", s.gamma),
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("time must be finite and non-negative, got {t}")))
    }
}

fn check_degree(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::domain("composition degree must be at least 1"))
    } else {
        Ok(())
    }
}

/// `u0(x + t)`
pub fn transport_exact(u0: &InitialCondition, t: f64, x: f64) -> Result<f64> {
    check_time(t)?;
    u0.eval(x + t)
}

/// Shift `t + a·t^{k+1}/n^k` of the n-th composition degree of the power-law family.
pub fn transport_power_composed(s: &PowerLawScheme, t: f64, n: u64) -> Result<f64> {
    check_time(t)?;
    check_degree(n)?;
    Ok(t + s.excess(t, n))
}

/// Shift `t + t·(t/n)^γ` of the n-th composition degree of the slow family.
pub fn transport_slow_composed(s: &SlowScheme, t: f64, n: u64) -> Result<f64> {
    check_time(t)?;
    check_degree(n)?;
    Ok(t + s.excess(t, n))
}

/// `2|sin(τ/2)|` with `τ = a·t^{k+1}/n^k`.
pub fn transport_sin_error_exact(s: &PowerLawScheme, t: f64, n: u64) -> Result<f64> {
    check_time(t)?;
    check_degree(n)?;
    Ok(2.0 * (s.excess(t, n) / 2.0).sin().abs())
}

/// `2|sin(τ/2)|` with `τ = t·w(n/t) = t^{1+γ}/n^γ`.
pub fn transport_sin_error_slow(s: &SlowScheme, t: f64, n: u64) -> Result<f64> {
    check_time(t)?;
    check_degree(n)?;
    Ok(2.0 * (s.excess(t, n) / 2.0).sin().abs())
}
