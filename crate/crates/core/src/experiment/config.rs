//! Flat `key=value` experiment configuration.
//!
//! Tokens are separated by whitespace or newlines; `#` starts a comment.
//! Layers are merged preset → file → command-line overrides, later layers
//! winning, and the merged map is validated into an [`ExperimentConfig`].
//!
//! | key | value | default |
//! |-----|-------|---------|
//! | `equation` | `transport` \| `heat` | required |
//! | `scheme` | `power:A,K` \| `slow:GAMMA` \| `g1` \| `g2` \| `g3` | required |
//! | `initial` | `sin` \| `exp-abs` \| `tabulated:PATH` | `sin` |
//! | `t` | time, > 0 | `1` |
//! | `a` | heat coefficient, > 0 | `1` |
//! | `n` | `LO..HI`, `LO..HI(geometric)`, `N1,N2,…` | `1..256(geometric)` |
//! | `grid` | `LOWER,UPPER,COUNT` | `0,2pi,20001` for sin, `-5,5,20001` otherwise |
//! | `outputs` | subset of `csv,json,svg` | `csv,json,svg` |
//! | `output_dir` | path | none |
//! | `fit_min` | smallest n in the log-log fit | `4` |
//! | `order` | order for the leading constant | theoretical order |
//! | `probe_order` | order for the bound probe | `1` |
//! | `allow_zero_t` | `true` \| `false` | `false` |
//! | `atom_cap` | max atom pairs per convolution | `10000000` |
//!
//! Real numbers accept a `pi` suffix (`2pi`, `-pi`) and fractions (`1/3`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analysis::{geometric_range, linear_range, Problem, Scheme, DEFAULT_FIT_MIN};
use crate::error::{Error, Result};
use crate::func::{Grid, InitialCondition, Tabulated};
use crate::heat::{HeatParams, HeatScheme};
use crate::measure::DEFAULT_ATOM_CAP;
use crate::transport::{PowerLawScheme, SlowScheme, TransportScheme};

pub const KNOWN_KEYS: &[&str] = &[
    "equation",
    "scheme",
    "initial",
    "t",
    "a",
    "n",
    "grid",
    "outputs",
    "output_dir",
    "fit_min",
    "order",
    "probe_order",
    "allow_zero_t",
    "atom_cap",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Transport,
    Heat,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Transport => "transport",
            Equation::Heat => "heat",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitialSpec {
    Sin,
    ExpAbs,
    Tabulated(PathBuf),
}

impl InitialSpec {
    pub fn load(&self) -> Result<InitialCondition> {
        Ok(match self {
            InitialSpec::Sin => InitialCondition::Sin,
            InitialSpec::ExpAbs => InitialCondition::ExpAbs,
            InitialSpec::Tabulated(path) => {
                InitialCondition::Tabulated(Tabulated::from_file(path).map_err(|e| match e {
                    Error::Domain(msg) => Error::validation("initial", msg),
                    other => other,
                })?)
            }
        })
    }
}

impl fmt::Display for InitialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialSpec::Sin => f.write_str("sin"),
            InitialSpec::ExpAbs => f.write_str("exp-abs"),
            InitialSpec::Tabulated(p) => write!(f, "tabulated:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SchemeSpec {
    Power { a: f64, k: f64 },
    Slow { gamma: f64 },
    Heat(HeatScheme),
}

impl SchemeSpec {
    /// Parses `power:A,K`, `slow:GAMMA`, `g1`, `g2` or `g3`.
    pub fn parse(text: &str) -> Result<Self> {
        parse_scheme(text)
    }

    pub fn equation(&self) -> Equation {
        match self {
            SchemeSpec::Power { .. } | SchemeSpec::Slow { .. } => Equation::Transport,
            SchemeSpec::Heat(_) => Equation::Heat,
        }
    }

    /// The scheme with heat coefficient `a` (ignored for transport).
    pub fn to_scheme(&self, a: f64) -> Result<Scheme> {
        Ok(match *self {
            SchemeSpec::Power { a, k } => Scheme::Transport {
                scheme: TransportScheme::Power(PowerLawScheme::new(a, k)?),
            },
            SchemeSpec::Slow { gamma } => Scheme::Transport {
                scheme: TransportScheme::Slow(SlowScheme::new(gamma)?),
            },
            SchemeSpec::Heat(kind) => Scheme::Heat {
                kind,
                params: HeatParams::new(a)?,
            },
        })
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpec::Power { a, k } => write!(f, "power:{a},{k}"),
            SchemeSpec::Slow { gamma } => write!(f, "slow:{gamma}"),
            SchemeSpec::Heat(kind) => write!(f, "{kind}"),
        }
    }
}

/// Composition degrees to evaluate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NSpec {
    List(Vec<u64>),
    Linear(u64, u64),
    Geometric(u64, u64),
}

impl NSpec {
    pub fn values(&self) -> Vec<u64> {
        match self {
            NSpec::List(v) => v.clone(),
            NSpec::Linear(lo, hi) => linear_range(*lo, *hi),
            NSpec::Geometric(lo, hi) => geometric_range(*lo, *hi),
        }
    }
}

impl fmt::Display for NSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NSpec::List(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                f.write_str(&parts.join(","))
            }
            NSpec::Linear(lo, hi) => write!(f, "{lo}..{hi}"),
            NSpec::Geometric(lo, hi) => write!(f, "{lo}..{hi}(geometric)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Csv,
    Json,
    Svg,
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputKind::Csv => "csv",
            OutputKind::Json => "json",
            OutputKind::Svg => "svg",
        })
    }
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub equation: Equation,
    pub initial: InitialSpec,
    pub scheme: SchemeSpec,
    pub t: f64,
    pub a: f64,
    pub n: NSpec,
    pub grid: Grid,
    pub outputs: BTreeSet<OutputKind>,
    pub output_dir: Option<PathBuf>,
    pub fit_min: u64,
    pub order: Option<f64>,
    pub probe_order: f64,
    pub allow_zero_t: bool,
    pub atom_cap: usize,
}

/// Unvalidated `key → value` layers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    /// Parses `key=value` tokens; rejects unknown keys and malformed tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for token in line.split_whitespace() {
                raw.set_token(token)?;
            }
        }
        Ok(raw)
    }

    /// Applies one `key=value` token.
    pub fn set_token(&mut self, token: &str) -> Result<()> {
        let (key, value) = token.split_once('=').ok_or_else(|| {
            Error::validation(token, "expected key=value")
        })?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::validation(key, "unknown key"));
        }
        self.entries.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Overlays `other` on `self`.
    pub fn merge(&mut self, other: &RawConfig) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn validate(&self) -> Result<ExperimentConfig> {
        let equation = match self.required("equation")? {
            "transport" => Equation::Transport,
            "heat" => Equation::Heat,
            other => {
                return Err(Error::validation(
                    "equation",
                    format!("expected transport or heat, got `{other}`"),
                ))
            }
        };
        let scheme = parse_scheme(self.required("scheme")?)?;
        if scheme.equation() != equation {
            return Err(Error::validation(
                "scheme",
                format!("scheme incompatible with equation ({scheme} is a {} scheme, equation is {equation})", scheme.equation()),
            ));
        }
        let initial = match self.get("initial").unwrap_or("sin") {
            "sin" => InitialSpec::Sin,
            "exp-abs" => InitialSpec::ExpAbs,
            other => match other.strip_prefix("tabulated:") {
                Some(path) if !path.is_empty() => InitialSpec::Tabulated(PathBuf::from(path)),
                _ => {
                    return Err(Error::validation(
                        "initial",
                        format!("expected sin, exp-abs or tabulated:PATH, got `{other}`"),
                    ))
                }
            },
        };
        let allow_zero_t = match self.get("allow_zero_t").unwrap_or("false") {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::validation(
                    "allow_zero_t",
                    format!("expected true or false, got `{other}`"),
                ))
            }
        };
        let t = self.real("t", 1.0)?;
        if !(t > 0.0 || (allow_zero_t && t == 0.0)) {
            return Err(Error::validation("t", format!("time must be positive, got {t}")));
        }
        let a = self.real("a", 1.0)?;
        if a.is_nan() || a <= 0.0 {
            return Err(Error::validation("a", format!("must be positive, got {a}")));
        }
        let n = parse_n(self.get("n").unwrap_or("1..256(geometric)"))?;
        let grid = match self.get("grid") {
            Some(text) => parse_grid(text)?,
            None => match initial {
                InitialSpec::Sin => Grid::periodic_default(),
                _ => Grid::decaying_default(),
            },
        };
        let outputs = match self.get("outputs") {
            None => [OutputKind::Csv, OutputKind::Json, OutputKind::Svg].into(),
            Some("") | Some("none") => BTreeSet::new(),
            Some(text) => text
                .split(',')
                .map(|s| match s.trim() {
                    "csv" => Ok(OutputKind::Csv),
                    "json" => Ok(OutputKind::Json),
                    "svg" => Ok(OutputKind::Svg),
                    other => Err(Error::validation(
                        "outputs",
                        format!("unknown output `{other}`"),
                    )),
                })
                .collect::<Result<_>>()?,
        };
        let fit_min = self.integer("fit_min", DEFAULT_FIT_MIN)?;
        let order = match self.get("order") {
            None => None,
            Some(_) => {
                let q = self.real("order", 1.0)?;
                if q.is_nan() || q <= 0.0 {
                    return Err(Error::validation("order", "must be positive"));
                }
                Some(q)
            }
        };
        let probe_order = self.real("probe_order", 1.0)?;
        if probe_order.is_nan() || probe_order <= 0.0 {
            return Err(Error::validation("probe_order", "must be positive"));
        }
        let atom_cap = self.integer("atom_cap", DEFAULT_ATOM_CAP as u64)? as usize;
        Ok(ExperimentConfig {
            equation,
            initial,
            scheme,
            t,
            a,
            n,
            grid,
            outputs,
            output_dir: self.get("output_dir").map(PathBuf::from),
            fit_min,
            order,
            probe_order,
            allow_zero_t,
            atom_cap,
        })
    }

    fn required(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::validation(key, "missing required key"))
    }

    fn real(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(text) => parse_real(text).ok_or_else(|| {
                Error::validation(key, format!("expected a finite number, got `{text}`"))
            }),
        }
    }

    fn integer(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(text) => text.parse().map_err(|_| {
                Error::validation(key, format!("expected a non-negative integer, got `{text}`"))
            }),
        }
    }
}

/// Parses a finite real: plain decimal, `Xpi`, or `P/Q`.
pub fn parse_real(text: &str) -> Option<f64> {
    let text = text.trim();
    let v = if let Some(coef) = text.strip_suffix("pi") {
        let c = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => parse_real(c)?,
        };
        c * std::f64::consts::PI
    } else if let Some((p, q)) = text.split_once('/') {
        parse_real(p)? / parse_real(q)?
    } else {
        text.parse().ok()?
    };
    v.is_finite().then_some(v)
}

fn parse_scheme(text: &str) -> Result<SchemeSpec> {
    let bad = |msg: String| Error::validation("scheme", msg);
    match text {
        "g1" => return Ok(SchemeSpec::Heat(HeatScheme::G1)),
        "g2" => return Ok(SchemeSpec::Heat(HeatScheme::G2)),
        "g3" => return Ok(SchemeSpec::Heat(HeatScheme::G3)),
        _ => {}
    }
    if let Some(args) = text.strip_prefix("power:") {
        let parts: Vec<&str> = args.split(',').collect();
        let [a, k] = parts[..] else {
            return Err(bad(format!("expected power:A,K, got `{text}`")));
        };
        let a = parse_real(a).ok_or_else(|| bad(format!("bad amplitude in `{text}`")))?;
        let k = parse_real(k).ok_or_else(|| bad(format!("bad exponent in `{text}`")))?;
        PowerLawScheme::new(a, k).map_err(|e| bad(e.to_string()))?;
        return Ok(SchemeSpec::Power { a, k });
    }
    if let Some(arg) = text.strip_prefix("slow:") {
        let gamma = parse_real(arg).ok_or_else(|| bad(format!("bad γ in `{text}`")))?;
        SlowScheme::new(gamma).map_err(|_| bad(format!("γ must lie in (0, 1), got {gamma}")))?;
        return Ok(SchemeSpec::Slow { gamma });
    }
    Err(bad(format!(
        "expected power:A,K, slow:GAMMA, g1, g2 or g3, got `{text}`"
    )))
}

fn parse_n(text: &str) -> Result<NSpec> {
    let bad = || {
        Error::validation(
            "n",
            format!("expected LO..HI, LO..HI(geometric) or a comma list, got `{text}`"),
        )
    };
    let int = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let spec = if let Some(range) = text.strip_suffix("(geometric)") {
        let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
        NSpec::Geometric(int(lo)?, int(hi)?)
    } else if let Some((lo, hi)) = text.split_once("..") {
        NSpec::Linear(int(lo)?, int(hi)?)
    } else {
        NSpec::List(text.split(',').map(int).collect::<Result<_>>()?)
    };
    let values = spec.values();
    if values.is_empty() || values[0] == 0 {
        return Err(Error::validation("n", format!("`{text}` yields no positive degrees")));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::validation("n", "degrees must be strictly increasing"));
    }
    Ok(spec)
}

fn parse_grid(text: &str) -> Result<Grid> {
    let bad = |msg: String| Error::validation("grid", msg);
    let parts: Vec<&str> = text.split(',').collect();
    let [lo, hi, count] = parts[..] else {
        return Err(bad(format!("expected LOWER,UPPER,COUNT, got `{text}`")));
    };
    let lo = parse_real(lo).ok_or_else(|| bad(format!("bad lower bound `{lo}`")))?;
    let hi = parse_real(hi).ok_or_else(|| bad(format!("bad upper bound `{hi}`")))?;
    let count = count
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad point count `{count}`")))?;
    Grid::new(lo, hi, count).map_err(|e| bad(e.to_string()))
}

impl ExperimentConfig {
    /// Parses and validates a single text layer.
    pub fn parse(text: &str) -> Result<Self> {
        RawConfig::parse(text)?.validate()
    }

    pub fn scheme(&self) -> Result<Scheme> {
        self.scheme.to_scheme(self.a)
    }

    /// Builds the problem; loads tabulated data from disk.
    pub fn problem(&self) -> Result<Problem> {
        Ok(Problem {
            scheme: self.scheme()?,
            initial: self.initial.load()?,
            t: self.t,
            grid: self.grid,
        })
    }

    /// Canonical `key → value` pairs; parsing them back yields `self`.
    pub fn to_pairs(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("equation", self.equation.to_string());
        put("initial", self.initial.to_string());
        put("scheme", self.scheme.to_string());
        put("t", self.t.to_string());
        put("a", self.a.to_string());
        put("n", self.n.to_string());
        put(
            "grid",
            format!("{},{},{}", self.grid.lower(), self.grid.upper(), self.grid.count()),
        );
        let outs: Vec<String> = self.outputs.iter().map(OutputKind::to_string).collect();
        put("outputs", if outs.is_empty() { "none".into() } else { outs.join(",") });
        if let Some(dir) = &self.output_dir {
            put("output_dir", dir.display().to_string());
        }
        put("fit_min", self.fit_min.to_string());
        if let Some(q) = self.order {
            put("order", q.to_string());
        }
        put("probe_order", self.probe_order.to_string());
        put("allow_zero_t", self.allow_zero_t.to_string());
        put("atom_cap", self.atom_cap.to_string());
        m
    }

    pub fn to_text(&self) -> String {
        self.to_pairs()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }
}
