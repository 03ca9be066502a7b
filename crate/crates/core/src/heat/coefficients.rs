//! Exact integer coefficients of the composition degrees of the two lattice
//! heat schemes.
//!
//! `G1(t) = (S_h + S_{−h} + 2I)/4` and `G2(t) = (S_h + S_{−h} + 4I)/6`, so
//! `G(t/n)^n` has the coefficients of the Laurent polynomial
//! `(z + z^{−1} + c)^n` over the normalizer `(c + 2)^n`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::HeatScheme;
use crate::error::{Error, Result};

/// Coefficients `coeff(p)`, `p ∈ −n..=n`, of `(z + z^{−1} + c)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCoefficientTable {
    kind: HeatScheme,
    n: u64,
    coefficients: Vec<BigUint>,
    normalizer: BigUint,
}

impl ExactCoefficientTable {
    pub fn kind(&self) -> HeatScheme {
        self.kind
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Coefficient at shift index `p`; zero outside `−n..=n`.
    pub fn coefficient(&self, p: i64) -> BigUint {
        let idx = p + self.n as i64;
        if idx < 0 {
            return BigUint::zero();
        }
        self.coefficients
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// Coefficients in order `p = −n, …, n`.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    /// `4^n` for G1, `6^n` for G2.
    pub fn normalizer(&self) -> &BigUint {
        &self.normalizer
    }

    pub fn sum(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    /// `coeff(p) / normalizer` as a float, for `p = −n, …, n`.
    pub fn normalized_weights(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .map(|c| ratio_to_f64(c, &self.normalizer))
            .collect()
    }
}

fn center_weight(kind: HeatScheme) -> Result<u32> {
    match kind {
        HeatScheme::G1 => Ok(2),
        HeatScheme::G2 => Ok(4),
        HeatScheme::G3 => Err(Error::domain(
            "G3 mixes two incommensurate steps and has no single-lattice coefficient table",
        )),
    }
}

/// Expands `(z + z^{−1} + c)^n` by repeated multiplication in exact integers.
pub fn heat_binomial_coefficients(kind: HeatScheme, n: u64) -> Result<ExactCoefficientTable> {
    let c = BigUint::from(center_weight(kind)?);
    if n == 0 {
        return Err(Error::domain("composition degree must be at least 1"));
    }
    let mut poly = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); poly.len() + 2];
        for (i, a) in poly.iter().enumerate() {
            next[i] += a;
            next[i + 1] += a * &c;
            next[i + 2] += a;
        }
        poly = next;
    }
    Ok(ExactCoefficientTable {
        kind,
        n,
        coefficients: poly,
        normalizer: (c + 2u32).pow(n as u32),
    })
}

/// The same coefficient from the closed double-binomial sum
/// `Σ_{k=0}^{⌊(n−|p|)/2⌋} C(n, k)·C(n−k, k+|p|)·c^{n−|p|−2k}`,
/// where `C(m, j)` is "m choose j".
pub fn closed_sum_coefficient(kind: HeatScheme, p: i64, n: u64) -> Result<BigUint> {
    let c = BigUint::from(center_weight(kind)?);
    let p = p.unsigned_abs();
    if p > n {
        return Ok(BigUint::zero());
    }
    let mut total = BigUint::zero();
    for k in 0..=(n - p) / 2 {
        total += binomial(n, k) * binomial(n - k, k + p) * c.pow((n - p - 2 * k) as u32);
    }
    Ok(total)
}

/// `C(m, j)` in exact integers.
pub fn binomial(m: u64, j: u64) -> BigUint {
    if j > m {
        return BigUint::zero();
    }
    let j = j.min(m - j);
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `num/den` rounded to a double without overflowing either operand.
fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    // scale so the integer quotient carries ~64 significant bits
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mut v = q.to_f64().unwrap_or(f64::INFINITY);
    let mut s = shift;
    // apply 2^{-s} in steps that stay within the exponent range
    while s > 0 {
        let step = s.min(1000);
        v *= 2f64.powi(-(step as i32));
        s -= step;
    }
    while s < 0 {
        let step = (-s).min(1000);
        v *= 2f64.powi(step as i32);
        s += step;
    }
    v
}
