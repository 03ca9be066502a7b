//! Initial conditions on the real line, uniform evaluation grids and the
//! sup-norm distance between two point-evaluable functions.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Piecewise-linear function through strictly increasing samples, constant
/// beyond the first and last sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tabulated {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Tabulated {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(Error::domain(format!(
                "tabulated function needs matching non-empty samples, got {} x and {} y values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::domain("tabulated samples must be finite"));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("tabulated x values must be strictly increasing"));
        }
        Ok(Self { xs, ys })
    }

    /// Constant function, sampled at two points.
    pub fn constant(value: f64) -> Self {
        Self {
            xs: vec![0.0, 1.0],
            ys: vec![value, value],
        }
    }

    /// Reads two numeric columns (x, y) separated by commas or whitespace.
    /// Blank lines, `#` comments and a non-numeric header line are skipped.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
            match parsed {
                Some(v) if v.len() == 2 => {
                    xs.push(v[0]);
                    ys.push(v[1]);
                }
                None if xs.is_empty() => continue, // header
                _ => {
                    return Err(Error::domain(format!(
                        "line {}: expected two numeric columns",
                        lineno + 1
                    )))
                }
            }
        }
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn value(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        // first index with xs[i] > x; 1 <= i <= n-1 here
        let i = self.xs.partition_point(|&xi| xi <= x);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn sup_abs(&self) -> f64 {
        self.ys.iter().fold(0.0, |m, y| m.max(y.abs()))
    }
}

/// A named initial condition u0 on the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialCondition {
    /// x ↦ sin(x)
    Sin,
    /// x ↦ exp(−|x|)
    ExpAbs,
    Tabulated(Tabulated),
}

impl InitialCondition {
    /// Checked evaluation; rejects non-finite arguments.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::domain(format!("initial condition evaluated at {x}")));
        }
        Ok(self.value(x))
    }

    /// Unchecked evaluation for inner loops.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match self {
            InitialCondition::Sin => x.sin(),
            InitialCondition::ExpAbs => (-x.abs()).exp(),
            InitialCondition::Tabulated(tab) => tab.value(x),
        }
    }

    /// sup over ℝ of |u0|.
    pub fn sup_abs(&self) -> f64 {
        match self {
            InitialCondition::Sin | InitialCondition::ExpAbs => 1.0,
            InitialCondition::Tabulated(tab) => tab.sup_abs(),
        }
    }

    /// Points where u0 fails to be smooth.
    pub fn kinks(&self) -> &[f64] {
        match self {
            InitialCondition::Sin => &[],
            InitialCondition::ExpAbs => &[0.0],
            InitialCondition::Tabulated(tab) => tab.xs(),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            InitialCondition::Sin => "sin",
            InitialCondition::ExpAbs => "exp-abs",
            InitialCondition::Tabulated(_) => "tabulated",
        }
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Convenience for [`InitialCondition::eval`].
pub fn eval_initial(u0: &InitialCondition, x: f64) -> Result<f64> {
    u0.eval(x)
}

/// Uniform grid `lower + j·h`, `j = 0..count`, with `h = (upper − lower)/(count − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    lower: f64,
    upper: f64,
    count: usize,
}

impl Grid {
    pub fn new(lower: f64, upper: f64, count: usize) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) || lower >= upper {
            return Err(Error::domain(format!(
                "grid bounds must be finite with lower < upper, got [{lower}, {upper}]"
            )));
        }
        if count < 2 {
            return Err(Error::domain(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(Self {
            lower,
            upper,
            count,
        })
    }

    /// `[0, 2π]` with 20001 points, used for periodic initial data.
    pub fn periodic_default() -> Self {
        Self {
            lower: 0.0,
            upper: std::f64::consts::TAU,
            count: 20001,
        }
    }

    /// `[−5, 5]` with 20001 points, used for decaying initial data.
    pub fn decaying_default() -> Self {
        Self {
            lower: -5.0,
            upper: 5.0,
            count: 20001,
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        (self.upper - self.lower) / (self.count - 1) as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        if j + 1 == self.count {
            self.upper
        } else {
            self.lower + j as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |j| self.point(j))
    }

    pub fn id(&self) -> String {
        format!("[{}, {}]/{}", self.lower, self.upper, self.count)
    }
}

/// max over grid points of |f(x) − g(x)|.
pub fn sup_norm_diff<F, G>(f: F, g: G, grid: &Grid) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    grid.points().fold(0.0, |m, x| m.max((f(x) - g(x)).abs()))
}

/// max over grid points of |a_j − b_j| for pre-evaluated samples.
pub fn sup_norm_diff_sampled(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
