//! Finite atomic measures on ℝ standing for weighted sums of shift operators.
//!
//! A measure `{(s_i, w_i)}` acts on a function by `f ↦ Σ w_i f(· + s_i)`.
//! Since `S_a ∘ S_b = S_{a+b}`, composing two such operators is the
//! convolution of their measures, and the n-th composition degree of a
//! Chernoff function is the n-fold convolution power of its measure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::InitialCondition;

/// Default bound on the number of atom pairs a single convolution may form.
pub const DEFAULT_ATOM_CAP: usize = 10_000_000;

/// Relative tolerance under which two offsets are the same atom.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Offsets `a` and `b` name the same shift when
/// `|a − b| ≤ 1e−12 · max(1, |a|, |b|)`.
#[inline]
pub fn offsets_coincide(a: f64, b: f64) -> bool {
    (a - b).abs() <= MERGE_TOLERANCE * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub offset: f64,
    pub weight: f64,
}

/// How [`ShiftMeasure::power_with`] builds the n-fold convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerStrategy {
    /// Binary exponentiation.
    Squaring,
    /// `m^k = m^(k−1) ⊛ m`, one small factor at a time.
    Accumulate,
    /// Squaring when the atom count grows linearly with the degree (offsets
    /// on one lattice) and the last squaring stays within the atom cap,
    /// accumulation otherwise.
    Auto,
}

/// Atomic measure with non-negative weights and strictly increasing,
/// pairwise distinct (beyond [`MERGE_TOLERANCE`]) offsets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftMeasure {
    atoms: Vec<Atom>,
}

impl ShiftMeasure {
    /// The identity operator, `{(0, 1)}`.
    pub fn identity() -> Self {
        Self {
            atoms: vec![Atom {
                offset: 0.0,
                weight: 1.0,
            }],
        }
    }

    /// A single shift `S_offset`.
    pub fn shift(offset: f64) -> Result<Self> {
        Self::from_atoms([(offset, 1.0)])
    }

    /// Builds a measure from `(offset, weight)` pairs in any order; coinciding
    /// offsets are merged and zero weights dropped.
    pub fn from_atoms(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut atoms = Vec::new();
        for (offset, weight) in pairs {
            if !offset.is_finite() || !weight.is_finite() {
                return Err(Error::domain("measure atoms must be finite"));
            }
            if weight < 0.0 {
                return Err(Error::domain(format!(
                    "measure weights must be non-negative, got {weight}"
                )));
            }
            if weight > 0.0 {
                atoms.push(Atom { offset, weight });
            }
        }
        if atoms.is_empty() {
            return Err(Error::domain("measure needs at least one atom of positive weight"));
        }
        atoms.sort_by(|a, b| a.offset.total_cmp(&b.offset));
        Ok(Self {
            atoms: merge_sorted(atoms),
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn max_abs_offset(&self) -> f64 {
        self.atoms.iter().fold(0.0, |m, a| m.max(a.offset.abs()))
    }

    /// Convolution `self ⊛ other`: all pairwise offset sums with product
    /// weights, coinciding offsets merged. Fails if the number of pairs
    /// would exceed `cap`.
    pub fn convolve(&self, other: &ShiftMeasure, cap: usize) -> Result<ShiftMeasure> {
        let pairs = self.len() as u64 * other.len() as u64;
        if pairs > cap as u64 {
            return Err(Error::AtomCap {
                requested: pairs,
                cap,
            });
        }
        let (big, small) = if self.len() >= other.len() {
            (&self.atoms, &other.atoms)
        } else {
            (&other.atoms, &self.atoms)
        };
        let raw = if small.len() <= 8 {
            merge_shifted_runs(big, small)
        } else {
            let mut all = Vec::with_capacity(pairs as usize);
            for s in small {
                all.extend(big.iter().map(|b| Atom {
                    offset: b.offset + s.offset,
                    weight: b.weight * s.weight,
                }));
            }
            all.sort_unstable_by(|a, b| a.offset.total_cmp(&b.offset));
            all
        };
        Ok(ShiftMeasure {
            atoms: merge_sorted(raw),
        })
    }

    /// n-fold convolution power, n ≥ 1.
    pub fn power(&self, n: u64, cap: usize) -> Result<ShiftMeasure> {
        self.power_with(n, PowerStrategy::Auto, cap)
    }

    pub fn power_with(&self, n: u64, strategy: PowerStrategy, cap: usize) -> Result<ShiftMeasure> {
        if n == 0 {
            return Err(Error::domain("composition degree must be at least 1"));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let strategy = match strategy {
            PowerStrategy::Auto => {
                if self.len() <= 1 {
                    PowerStrategy::Squaring
                } else {
                    let square = self.convolve(self, cap)?;
                    // on a lattice m^k has about k(L−1)+1 atoms; the last
                    // squaring multiplies two halves of that size
                    let half = (n / 2) as u128 * (self.len() as u128 - 1) + 1;
                    if square.len() < 2 * self.len() && half * half <= cap as u128 {
                        PowerStrategy::Squaring
                    } else {
                        PowerStrategy::Accumulate
                    }
                }
            }
            s => s,
        };
        match strategy {
            PowerStrategy::Accumulate => {
                let mut acc = self.clone();
                for _ in 1..n {
                    acc = acc.convolve(self, cap)?;
                }
                Ok(acc)
            }
            _ => {
                let mut result: Option<ShiftMeasure> = None;
                let mut base = self.clone();
                let mut k = n;
                loop {
                    if k & 1 == 1 {
                        result = Some(match result {
                            None => base.clone(),
                            Some(r) => r.convolve(&base, cap)?,
                        });
                    }
                    k >>= 1;
                    if k == 0 {
                        break;
                    }
                    base = base.convolve(&base, cap)?;
                }
                Ok(result.expect("n >= 1 sets at least one bit"))
            }
        }
    }

    /// `Σ_i w_i · u0(x + s_i)`.
    pub fn apply(&self, u0: &InitialCondition, x: f64) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.weight * u0.value(x + a.offset))
            .sum()
    }

    /// Same as [`ShiftMeasure::apply`] for an arbitrary function.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64, x: f64) -> f64 {
        self.atoms.iter().map(|a| a.weight * f(x + a.offset)).sum()
    }
}

/// Convolution `m1 ⊛ m2`; see [`ShiftMeasure::convolve`].
pub fn convolve_measures(m1: &ShiftMeasure, m2: &ShiftMeasure) -> Result<ShiftMeasure> {
    m1.convolve(m2, DEFAULT_ATOM_CAP)
}

/// n-fold convolution power of `m`.
pub fn measure_power(m: &ShiftMeasure, n: u64) -> Result<ShiftMeasure> {
    m.power(n, DEFAULT_ATOM_CAP)
}

/// `Σ_i w_i · u0(x + s_i)`.
pub fn apply_measure(m: &ShiftMeasure, u0: &InitialCondition, x: f64) -> f64 {
    m.apply(u0, x)
}

/// Merges a sorted run of atoms whose neighbouring offsets coincide.
fn merge_sorted(sorted: Vec<Atom>) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::with_capacity(sorted.len());
    for atom in sorted {
        match out.last_mut() {
            Some(last) if offsets_coincide(last.offset, atom.offset) => last.weight += atom.weight,
            _ => out.push(atom),
        }
    }
    out
}

/// `big` shifted by each atom of `small` gives `small.len()` sorted runs;
/// k-way merge them into one sorted list.
fn merge_shifted_runs(big: &[Atom], small: &[Atom]) -> Vec<Atom> {
    let k = small.len();
    let mut heads = vec![0usize; k];
    let mut out = Vec::with_capacity(big.len() * k);
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (r, &h) in heads.iter().enumerate() {
            if h < big.len() {
                let off = big[h].offset + small[r].offset;
                if best.is_none_or(|(_, b)| off < b) {
                    best = Some((r, off));
                }
            }
        }
        let Some((r, offset)) = best else { break };
        out.push(Atom {
            offset,
            weight: big[heads[r]].weight * small[r].weight,
        });
        heads[r] += 1;
    }
    out
}

/// Evaluates a measure's action on an initial condition at many points.
///
/// For `sin` the action collapses to `c·sin x + s·cos x`; for `exp(−|x|)`
/// it splits into two exponential sums over the atoms left and right of
/// `−x`, read off prefix sums. Other data fall back to the direct sum.
#[derive(Debug, Clone)]
pub enum MeasureAction {
    Sin {
        cos_moment: f64,
        sin_moment: f64,
    },
    ExpAbs {
        offsets: Vec<f64>,
        /// `right[i] = Σ_{k ≥ i} w_k e^{−s_k}`
        right: Vec<f64>,
        /// `left[i] = Σ_{k < i} w_k e^{s_k}`
        left: Vec<f64>,
    },
    Direct {
        measure: ShiftMeasure,
        u0: InitialCondition,
    },
}

// Above this offset magnitude the exponential sums may overflow.
const EXP_SPLIT_MAX_OFFSET: f64 = 300.0;

impl MeasureAction {
    pub fn new(measure: &ShiftMeasure, u0: &InitialCondition) -> Self {
        match u0 {
            // a pure shift is evaluated directly, bit-identical to `u0(x + s)`
            _ if measure.len() == 1 => MeasureAction::Direct {
                measure: measure.clone(),
                u0: u0.clone(),
            },
            InitialCondition::Sin => {
                let (c, s) = measure.atoms().iter().fold((0.0, 0.0), |(c, s), a| {
                    let (sin, cos) = a.offset.sin_cos();
                    (c + a.weight * cos, s + a.weight * sin)
                });
                MeasureAction::Sin {
                    cos_moment: c,
                    sin_moment: s,
                }
            }
            InitialCondition::ExpAbs if measure.max_abs_offset() <= EXP_SPLIT_MAX_OFFSET => {
                let atoms = measure.atoms();
                let offsets: Vec<f64> = atoms.iter().map(|a| a.offset).collect();
                let mut right = vec![0.0; atoms.len() + 1];
                for i in (0..atoms.len()).rev() {
                    right[i] = right[i + 1] + atoms[i].weight * (-atoms[i].offset).exp();
                }
                let mut left = vec![0.0; atoms.len() + 1];
                for i in 0..atoms.len() {
                    left[i + 1] = left[i] + atoms[i].weight * atoms[i].offset.exp();
                }
                MeasureAction::ExpAbs {
                    offsets,
                    right,
                    left,
                }
            }
            _ => MeasureAction::Direct {
                measure: measure.clone(),
                u0: u0.clone(),
            },
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            MeasureAction::Sin {
                cos_moment,
                sin_moment,
            } => {
                let (s, c) = x.sin_cos();
                cos_moment * s + sin_moment * c
            }
            MeasureAction::ExpAbs {
                offsets,
                right,
                left,
            } => {
                // atoms with x + s_k >= 0 contribute w e^{-x-s_k}
                let i = offsets.partition_point(|&s| x + s < 0.0);
                let r = if right[i] > 0.0 { (-x).exp() * right[i] } else { 0.0 };
                let l = if left[i] > 0.0 { x.exp() * left[i] } else { 0.0 };
                r + l
            }
            MeasureAction::Direct { measure, u0 } => measure.apply(u0, x),
        }
    }
}
