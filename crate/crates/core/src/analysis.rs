//! Error curves over composition degrees and the statistics drawn from them:
//! log-log regression for the empirical order, the leading constant of
//! `error ≈ C/n^q`, and a probe of `sup_n n^q·error`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::{Grid, InitialCondition};
use crate::heat::{self, HeatParams, HeatScheme};
use crate::measure::{MeasureAction, ShiftMeasure, DEFAULT_ATOM_CAP};
use crate::transport::TransportScheme;

/// Records with `n` below this are treated as pre-asymptotic by default.
pub const DEFAULT_FIT_MIN: u64 = 4;

/// Relative growth above which three successive values count as growing.
pub const GROWTH_THRESHOLD: f64 = 0.01;

/// A Chernoff family together with the equation it approximates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "kebab-case")]
pub enum Scheme {
    Transport {
        scheme: TransportScheme,
    },
    Heat {
        kind: HeatScheme,
        params: HeatParams,
    },
}

impl Scheme {
    pub fn id(&self) -> String {
        match self {
            Scheme::Transport { scheme } => scheme.id(),
            Scheme::Heat { kind, .. } => kind.id().to_string(),
        }
    }

    pub fn equation(&self) -> &'static str {
        match self {
            Scheme::Transport { .. } => "transport",
            Scheme::Heat { .. } => "heat",
        }
    }

    /// Measure of `(G(t/n))^n`.
    pub fn composed_measure(&self, t: f64, n: u64, cap: usize) -> Result<ShiftMeasure> {
        match self {
            Scheme::Transport { scheme } => ShiftMeasure::shift(scheme.composed_shift(t, n)?),
            Scheme::Heat { kind, params } => {
                if n == 0 {
                    return Err(Error::domain("composition degree must be at least 1"));
                }
                heat::heat_chernoff_measure(*kind, params, t / n as f64)?.power(n, cap)
            }
        }
    }

    /// Exact solution `(e^{tL}u0)(x)`.
    pub fn exact(&self, u0: &InitialCondition, t: f64, x: f64) -> Result<f64> {
        match self {
            Scheme::Transport { .. } => crate::transport::transport_exact(u0, t, x),
            Scheme::Heat { params, .. } => heat::heat_exact(u0, params, t, x),
        }
    }

    /// Sup-norm error over ℝ in closed form, where one is known.
    pub fn closed_form_error(&self, u0: &InitialCondition, t: f64, n: u64) -> Result<Option<f64>> {
        if !matches!(u0, InitialCondition::Sin) {
            return Ok(None);
        }
        Ok(Some(match self {
            Scheme::Transport { scheme } => scheme.sin_error(t, n)?,
            Scheme::Heat { kind, params } => heat::heat_sin_error(*kind, params, t, n)?,
        }))
    }

    /// Convergence order the theory predicts for `u0`, if any.
    pub fn expected_order(&self, u0: &InitialCondition) -> f64 {
        match self {
            Scheme::Transport {
                scheme: TransportScheme::Power(s),
            } => s.k(),
            Scheme::Transport {
                scheme: TransportScheme::Slow(s),
            } => s.gamma(),
            Scheme::Heat { kind, .. } => match u0 {
                InitialCondition::Sin => kind.smooth_order() as f64,
                _ => 1.0,
            },
        }
    }
}

/// An approximation problem: scheme, initial data, time and measuring grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub scheme: Scheme,
    pub initial: InitialCondition,
    pub t: f64,
    pub grid: Grid,
}

impl Problem {
    /// Exact solution sampled on the grid.
    pub fn exact_samples(&self) -> Result<Vec<f64>> {
        let xs: Vec<f64> = self.grid.points().collect();
        xs.par_iter()
            .map(|&x| self.scheme.exact(&self.initial, self.t, x))
            .collect()
    }

    /// n-th Chernoff approximation sampled on the grid.
    pub fn approximation_samples(&self, n: u64, cap: usize) -> Result<Vec<f64>> {
        let action = MeasureAction::new(&self.scheme.composed_measure(self.t, n, cap)?, &self.initial);
        Ok(self.grid.points().map(|x| action.value(x)).collect())
    }
}

/// Error of one composition degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub n: u64,
    pub t: f64,
    pub measured_error: f64,
    pub closed_form_error: Option<f64>,
    pub scheme: String,
    pub initial: String,
    pub grid: String,
}

impl ErrorRecord {
    /// Usable on a log scale.
    pub fn loggable(&self) -> bool {
        self.measured_error > 0.0
    }

    pub fn abs_gap(&self) -> Option<f64> {
        self.closed_form_error
            .map(|c| (self.measured_error - c).abs())
    }
}

fn check_n_values(n_values: &[u64]) -> Result<()> {
    if n_values.is_empty() {
        return Err(Error::domain("no composition degrees given"));
    }
    if n_values[0] == 0 {
        return Err(Error::domain("composition degrees must be at least 1"));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("composition degrees must be strictly increasing"));
    }
    Ok(())
}

/// One [`ErrorRecord`] per `n`: the sup-norm distance on the grid between
/// `(G(t/n))^n u0` and `e^{tL}u0`, plus the closed-form error when known.
pub fn error_curve(problem: &Problem, n_values: &[u64]) -> Result<Vec<ErrorRecord>> {
    error_curve_with_cap(problem, n_values, DEFAULT_ATOM_CAP)
}

pub fn error_curve_with_cap(
    problem: &Problem,
    n_values: &[u64],
    cap: usize,
) -> Result<Vec<ErrorRecord>> {
    check_n_values(n_values)?;
    let exact = problem.exact_samples()?;
    let grid_id = problem.grid.id();
    let scheme_id = problem.scheme.id();
    n_values
        .par_iter()
        .map(|&n| {
            let measure = problem.scheme.composed_measure(problem.t, n, cap)?;
            let action = MeasureAction::new(&measure, &problem.initial);
            let measured_error = problem
                .grid
                .points()
                .zip(&exact)
                .fold(0.0_f64, |m, (x, e)| m.max((action.value(x) - e).abs()));
            Ok(ErrorRecord {
                n,
                t: problem.t,
                measured_error,
                closed_form_error: problem
                    .scheme
                    .closed_form_error(&problem.initial, problem.t, n)?,
                scheme: scheme_id.clone(),
                initial: problem.initial.id().to_string(),
                grid: grid_id.clone(),
            })
        })
        .collect()
}

/// Least-squares line through `(log10 n, log10 error)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Smallest and largest `n` that entered the fit.
    pub window: (u64, u64),
}

impl RegressionFit {
    /// Empirical convergence order, `−slope`.
    pub fn order(&self) -> f64 {
        -self.slope
    }

    pub fn predict(&self, n: f64) -> f64 {
        10f64.powf(self.intercept + self.slope * n.log10())
    }
}

/// Log-log fit over records with `n ≥ n_min` and a positive error.
pub fn loglog_fit(records: &[ErrorRecord], n_min: u64) -> Result<RegressionFit> {
    loglog_fit_window(records, n_min, u64::MAX)
}

/// Log-log fit over records with `n_min ≤ n ≤ n_max` and a positive error.
pub fn loglog_fit_window(records: &[ErrorRecord], n_min: u64, n_max: u64) -> Result<RegressionFit> {
    let used: Vec<&ErrorRecord> = records
        .iter()
        .filter(|r| r.n >= n_min && r.n <= n_max && r.loggable())
        .collect();
    if used.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "log-log fit needs at least 3 positive errors with {n_min} <= n <= {n_max}, found {}",
            used.len()
        )));
    }
    let xs: Vec<f64> = used.iter().map(|r| (r.n as f64).log10()).collect();
    let ys: Vec<f64> = used.iter().map(|r| r.measured_error.log10()).collect();
    let (slope, intercept, r_squared) = least_squares(&xs, &ys);
    let lo = used.iter().map(|r| r.n).min().unwrap_or(0);
    let hi = used.iter().map(|r| r.n).max().unwrap_or(0);
    Ok(RegressionFit {
        slope,
        intercept,
        r_squared,
        window: (lo, hi),
    })
}

/// Returns `(slope, intercept, r²)`.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    (slope, intercept, r_squared)
}

/// Estimates of `C` in `error ≈ C/n^order`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadingCoefficient {
    pub order: f64,
    /// Largest `n` in the records.
    pub n: u64,
    /// `n^order · error` at that `n`.
    pub at_largest_n: f64,
    /// Extrapolation from the two largest `n`, assuming
    /// `n^order · error = C + D/n + …`.
    pub richardson: f64,
}

pub fn leading_coefficient(records: &[ErrorRecord], order: f64) -> Result<LeadingCoefficient> {
    if order.is_nan() || order <= 0.0 {
        return Err(Error::domain(format!("order must be positive, got {order}")));
    }
    if records.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "leading coefficient needs at least 2 records, found {}",
            records.len()
        )));
    }
    let mut sorted: Vec<&ErrorRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.n);
    let last = sorted[sorted.len() - 1];
    let prev = sorted[sorted.len() - 2];
    let scaled = |r: &ErrorRecord| (r.n as f64).powf(order) * r.measured_error;
    let (n1, n2) = (prev.n as f64, last.n as f64);
    let (v1, v2) = (scaled(prev), scaled(last));
    Ok(LeadingCoefficient {
        order,
        n: last.n,
        at_largest_n: v2,
        richardson: (n2 * v2 - n1 * v1) / (n2 - n1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Bounded,
    Growing,
}

/// Outcome of testing `error ≤ C/n^order` on a finite record set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub order: f64,
    /// `max_n n^order · error`
    pub sup_value: f64,
    pub attained_at_n: u64,
    pub trend: Trend,
}

/// `sup_n n^order · error`, flagged as growing when the last three values
/// each rise by more than 1%.
pub fn conjecture_bound_probe(records: &[ErrorRecord], order: f64) -> Result<ProbeResult> {
    if records.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "bound probe needs at least 3 records, found {}",
            records.len()
        )));
    }
    let mut sorted: Vec<&ErrorRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.n);
    let scaled: Vec<(u64, f64)> = sorted
        .iter()
        .map(|r| (r.n, (r.n as f64).powf(order) * r.measured_error))
        .collect();
    let (attained_at_n, sup_value) = scaled
        .iter()
        .copied()
        .fold((scaled[0].0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    let tail = &scaled[scaled.len() - 3..];
    let growing = tail
        .windows(2)
        .all(|w| w[1].1 > w[0].1 * (1.0 + GROWTH_THRESHOLD));
    Ok(ProbeResult {
        order,
        sup_value,
        attained_at_n,
        trend: if growing {
            Trend::Growing
        } else {
            Trend::Bounded
        },
    })
}

/// `lo, 2lo, 4lo, …` up to `hi`, with `hi` appended when not a power step.
pub fn geometric_range(lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if lo == 0 || lo > hi {
        return out;
    }
    let mut n = lo;
    while n <= hi {
        out.push(n);
        match n.checked_mul(2) {
            Some(m) => n = m,
            None => break,
        }
    }
    if out.last() != Some(&hi) {
        out.push(hi);
    }
    out
}

pub fn linear_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(1)..=hi).collect()
}
