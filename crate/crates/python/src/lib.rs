//! Python bindings: `import chernoff_lab`.
//!
//! Initial conditions are passed as `"sin"`, `"exp-abs"` or an
//! [`PyInitial`] built from tabulated samples; schemes use the config
//! syntax (`"power:1,1"`, `"slow:0.5"`, `"g1"`, ...).

use std::path::PathBuf;

use chernoff_core::analysis::{self, Problem};
use chernoff_core::experiment::config::SchemeSpec;
use chernoff_core::experiment::{self, ExperimentConfig};
use chernoff_core::heat::{self, HeatParams, HeatScheme};
use chernoff_core::measure::{MeasureAction, DEFAULT_ATOM_CAP};
use chernoff_core::{Error, ErrorRecord, InitialCondition, ShiftMeasure, Tabulated};
use num_bigint::BigUint;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Validation { .. } => PyValueError::new_err(e.to_string()),
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn heat_kind(name: &str) -> PyResult<HeatScheme> {
    match SchemeSpec::parse(name).map_err(to_py)? {
        SchemeSpec::Heat(kind) => Ok(kind),
        other => Err(PyValueError::new_err(format!("{other} is not a heat scheme"))),
    }
}

fn params(a: f64) -> PyResult<HeatParams> {
    HeatParams::new(a).map_err(to_py)
}

/// An initial condition `u0`.
#[pyclass(name = "InitialCondition", module = "chernoff_lab", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyInitial {
    inner: InitialCondition,
}

#[pymethods]
impl PyInitial {
    #[staticmethod]
    fn sin() -> Self {
        PyInitial {
            inner: InitialCondition::Sin,
        }
    }

    #[staticmethod]
    fn exp_abs() -> Self {
        PyInitial {
            inner: InitialCondition::ExpAbs,
        }
    }

    /// Piecewise-linear interpolation of samples, constant beyond the ends.
    #[staticmethod]
    fn tabulated(xs: Vec<f64>, ys: Vec<f64>) -> PyResult<Self> {
        Ok(PyInitial {
            inner: InitialCondition::Tabulated(Tabulated::new(xs, ys).map_err(to_py)?),
        })
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(to_py)
    }

    fn sup_abs(&self) -> f64 {
        self.inner.sup_abs()
    }

    fn __repr__(&self) -> String {
        format!("InitialCondition({})", self.inner.id())
    }
}

#[derive(FromPyObject)]
enum InitialArg {
    Object(PyInitial),
    Name(String),
}

impl InitialArg {
    fn resolve(self) -> PyResult<InitialCondition> {
        match self {
            InitialArg::Object(o) => Ok(o.inner),
            InitialArg::Name(n) => match n.as_str() {
                "sin" => Ok(InitialCondition::Sin),
                "exp-abs" => Ok(InitialCondition::ExpAbs),
                other => Err(PyValueError::new_err(format!(
                    "unknown initial condition `{other}`"
                ))),
            },
        }
    }
}

/// Finite atomic measure `Σ w_i δ_{s_i}` acting as `Σ w_i u(x + s_i)`.
#[pyclass(name = "ShiftMeasure", module = "chernoff_lab", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyShiftMeasure {
    inner: ShiftMeasure,
}

#[pymethods]
impl PyShiftMeasure {
    /// From `(offset, weight)` pairs; coinciding offsets are merged.
    #[new]
    fn new(atoms: Vec<(f64, f64)>) -> PyResult<Self> {
        Ok(PyShiftMeasure {
            inner: ShiftMeasure::from_atoms(atoms).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn identity() -> Self {
        PyShiftMeasure {
            inner: ShiftMeasure::identity(),
        }
    }

    #[staticmethod]
    fn shift(offset: f64) -> PyResult<Self> {
        Ok(PyShiftMeasure {
            inner: ShiftMeasure::shift(offset).map_err(to_py)?,
        })
    }

    #[getter]
    fn atoms(&self) -> Vec<(f64, f64)> {
        self.inner.atoms().iter().map(|a| (a.offset, a.weight)).collect()
    }

    fn weight_sum(&self) -> f64 {
        self.inner.weight_sum()
    }

    #[pyo3(signature = (other, cap = DEFAULT_ATOM_CAP))]
    fn convolve(&self, other: &PyShiftMeasure, cap: usize) -> PyResult<Self> {
        Ok(PyShiftMeasure {
            inner: self.inner.convolve(&other.inner, cap).map_err(to_py)?,
        })
    }

    #[pyo3(signature = (n, cap = DEFAULT_ATOM_CAP))]
    fn power(&self, n: u64, cap: usize) -> PyResult<Self> {
        Ok(PyShiftMeasure {
            inner: self.inner.power(n, cap).map_err(to_py)?,
        })
    }

    /// `(M u0)(x)` for each `x`.
    fn apply(&self, initial: InitialArg, xs: Vec<f64>) -> PyResult<Vec<f64>> {
        let action = MeasureAction::new(&self.inner, &initial.resolve()?);
        Ok(xs.into_iter().map(|x| action.value(x)).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("ShiftMeasure({} atoms)", self.inner.len())
    }
}

/// Error of one composition degree.
#[pyclass(name = "ErrorRecord", module = "chernoff_lab", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyErrorRecord {
    n: u64,
    t: f64,
    measured_error: f64,
    closed_form_error: Option<f64>,
    scheme: String,
    initial: String,
}

impl From<ErrorRecord> for PyErrorRecord {
    fn from(r: ErrorRecord) -> Self {
        PyErrorRecord {
            n: r.n,
            t: r.t,
            measured_error: r.measured_error,
            closed_form_error: r.closed_form_error,
            scheme: r.scheme,
            initial: r.initial,
        }
    }
}

#[pymethods]
impl PyErrorRecord {
    fn __repr__(&self) -> String {
        format!("ErrorRecord(n={}, measured_error={:e})", self.n, self.measured_error)
    }
}

#[pyfunction]
fn erfc(x: f64) -> f64 {
    heat::erfc(x)
}

#[pyfunction]
fn erf(x: f64) -> f64 {
    heat::erf(x)
}

#[pyfunction]
#[pyo3(signature = (t, x, a = 1.0))]
fn heat_kernel(t: f64, x: f64, a: f64) -> PyResult<f64> {
    heat::heat_kernel(&params(a)?, t, x).map_err(to_py)
}

/// Exact heat solution `(e^{t a² Δ} u0)(x)`.
#[pyfunction]
#[pyo3(signature = (initial, t, x, a = 1.0))]
fn heat_exact(initial: InitialArg, t: f64, x: f64, a: f64) -> PyResult<f64> {
    heat::heat_exact(&initial.resolve()?, &params(a)?, t, x).map_err(to_py)
}

/// Measure of one application `G(t)` of scheme `"g1"`, `"g2"` or `"g3"`.
#[pyfunction]
#[pyo3(signature = (scheme, t, a = 1.0))]
fn heat_chernoff_measure(scheme: &str, t: f64, a: f64) -> PyResult<PyShiftMeasure> {
    Ok(PyShiftMeasure {
        inner: heat::heat_chernoff_measure(heat_kind(scheme)?, &params(a)?, t).map_err(to_py)?,
    })
}

#[pyfunction]
#[pyo3(signature = (scheme, t, n, a = 1.0))]
fn heat_sin_error(scheme: &str, t: f64, n: u64, a: f64) -> PyResult<f64> {
    heat::heat_sin_error(heat_kind(scheme)?, &params(a)?, t, n).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (t, a = 1.0))]
fn g1_sin_leading_coefficient(t: f64, a: f64) -> PyResult<f64> {
    Ok(heat::g1_sin_leading_coefficient(&params(a)?, t))
}

/// Exact integer coefficients of `(z + 1/z + c)^n`, `p = −n..n`, and the
/// normalizer `(c + 2)^n`.
#[pyfunction]
fn heat_binomial_coefficients(scheme: &str, n: u64) -> PyResult<(Vec<BigUint>, BigUint)> {
    let table = heat::heat_binomial_coefficients(heat_kind(scheme)?, n).map_err(to_py)?;
    Ok((table.coefficients().to_vec(), table.normalizer().clone()))
}

#[pyfunction]
fn transport_exact(initial: InitialArg, t: f64, x: f64) -> PyResult<f64> {
    chernoff_core::transport::transport_exact(&initial.resolve()?, t, x).map_err(to_py)
}

/// Closed-form sup-norm error of a transport scheme on `sin`.
#[pyfunction]
fn transport_sin_error(scheme: &str, t: f64, n: u64) -> PyResult<f64> {
    match SchemeSpec::parse(scheme).map_err(to_py)?.to_scheme(1.0).map_err(to_py)? {
        analysis::Scheme::Transport { scheme } => scheme.sin_error(t, n).map_err(to_py),
        _ => Err(PyValueError::new_err(format!("{scheme} is not a transport scheme"))),
    }
}

/// Measured errors for the experiment described by `config` (key=value text).
#[pyfunction]
fn error_curve(config: &str) -> PyResult<Vec<PyErrorRecord>> {
    let cfg = ExperimentConfig::parse(config).map_err(to_py)?;
    let problem: Problem = cfg.problem().map_err(to_py)?;
    let records =
        analysis::error_curve_with_cap(&problem, &cfg.n.values(), cfg.atom_cap).map_err(to_py)?;
    Ok(records.into_iter().map(Into::into).collect())
}

/// `(slope, intercept, r_squared)` of `log10 error` on `log10 n` for `n ≥ n_min`.
#[pyfunction]
#[pyo3(signature = (ns, errors, n_min = 1))]
fn loglog_fit(ns: Vec<u64>, errors: Vec<f64>, n_min: u64) -> PyResult<(f64, f64, f64)> {
    if ns.len() != errors.len() {
        return Err(PyValueError::new_err("ns and errors differ in length"));
    }
    let records: Vec<ErrorRecord> = ns
        .into_iter()
        .zip(errors)
        .map(|(n, e)| ErrorRecord {
            n,
            t: 0.0,
            measured_error: e,
            closed_form_error: None,
            scheme: String::new(),
            initial: String::new(),
            grid: String::new(),
        })
        .collect();
    let fit = analysis::loglog_fit(&records, n_min).map_err(to_py)?;
    Ok((fit.slope, fit.intercept, fit.r_squared))
}

/// Runs an experiment; returns the report as JSON. Files are written when
/// `out_dir` (or the `output_dir` key) is set.
#[pyfunction]
#[pyo3(signature = (config = "", preset = None, out_dir = None))]
fn run_experiment(
    py: Python<'_>,
    config: &str,
    preset: Option<&str>,
    out_dir: Option<PathBuf>,
) -> PyResult<String> {
    let mut raw = match preset {
        Some(name) => experiment::presets::preset_layer(name).map_err(to_py)?,
        None => experiment::RawConfig::default(),
    };
    raw.merge(&experiment::RawConfig::parse(config).map_err(to_py)?);
    let mut cfg = raw.validate().map_err(to_py)?;
    if out_dir.is_none() && cfg.output_dir.is_none() {
        cfg.outputs.clear();
    }
    let (report, _) = py
        .detach(|| experiment::run_experiment(&cfg, out_dir.as_deref()))
        .map_err(to_py)?;
    report.to_json().map_err(to_py)
}

/// `(name, description, config)` for every built-in preset.
#[pyfunction]
fn list_presets() -> Vec<(&'static str, &'static str, &'static str)> {
    experiment::PRESETS
        .iter()
        .map(|p| (p.name, p.description, p.config))
        .collect()
}

#[pymodule]
pub fn chernoff_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInitial>()?;
    m.add_class::<PyShiftMeasure>()?;
    m.add_class::<PyErrorRecord>()?;
    m.add_function(wrap_pyfunction!(erfc, m)?)?;
    m.add_function(wrap_pyfunction!(erf, m)?)?;
    m.add_function(wrap_pyfunction!(heat_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(heat_exact, m)?)?;
    m.add_function(wrap_pyfunction!(heat_chernoff_measure, m)?)?;
    m.add_function(wrap_pyfunction!(heat_sin_error, m)?)?;
    m.add_function(wrap_pyfunction!(g1_sin_leading_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(heat_binomial_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(transport_exact, m)?)?;
    m.add_function(wrap_pyfunction!(transport_sin_error, m)?)?;
    m.add_function(wrap_pyfunction!(error_curve, m)?)?;
    m.add_function(wrap_pyfunction!(loglog_fit, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(list_presets, m)?)?;
    Ok(())
}
