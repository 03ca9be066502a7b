//! Runs a validated experiment and writes its artifacts.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    conjecture_bound_probe, error_curve_with_cap, leading_coefficient, loglog_fit, ErrorRecord,
    LeadingCoefficient, Problem, ProbeResult, RegressionFit, Scheme,
};
use crate::error::{Error, Result};
use crate::func::{Grid, InitialCondition};
use crate::heat::{g1_sin_leading_coefficient, HeatScheme};
use crate::measure::MeasureAction;
use crate::transport::TransportScheme;

use super::config::{ExperimentConfig, OutputKind};
use super::plot::{emit_plot, PlotData, PlotStyle, Series};

pub const CSV_FILE: &str = "errors.csv";
pub const JSON_FILE: &str = "report.json";
pub const OVERLAY_FILE: &str = "overlay.svg";
pub const ERROR_FILE: &str = "error.svg";
pub const LOGLOG_FILE: &str = "loglog.svg";
pub const CSV_HEADER: [&str; 4] = ["n", "measured_error", "closed_form_error", "abs_gap"];

/// Most points drawn per overlay curve.
const OVERLAY_POINTS: usize = 801;

/// Leading-constant estimate with the theoretical limit when one is known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeadingReport {
    #[serde(flatten)]
    pub estimate: LeadingCoefficient,
    pub reference: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: BTreeMap<String, String>,
    pub records: Vec<ErrorRecord>,
    pub fit: Option<RegressionFit>,
    pub leading_coefficient: Option<LeadingReport>,
    pub conjecture_probe: Option<ProbeResult>,
    pub wall_time_seconds: f64,
}

impl RunReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// A row read back from `errors.csv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub n: u64,
    pub measured_error: f64,
    pub closed_form_error: Option<f64>,
    pub abs_gap: Option<f64>,
}

impl From<&ErrorRecord> for CsvRow {
    fn from(r: &ErrorRecord) -> Self {
        CsvRow {
            n: r.n,
            measured_error: r.measured_error,
            closed_form_error: r.closed_form_error,
            abs_gap: r.abs_gap(),
        }
    }
}

/// 17 significant digits; parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn format_opt(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

pub fn write_errors_csv(records: &[ErrorRecord], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(e, path))?;
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            format_float(r.measured_error),
            format_opt(r.closed_form_error),
            format_opt(r.abs_gap()),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_errors_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_io(e, path))?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::domain(format!("unexpected CSV header {header:?}")));
    }
    let bad = |field: &str| Error::domain(format!("malformed CSV field `{field}`"));
    let real = |s: &str| s.parse::<f64>().map_err(|_| bad(s));
    let opt = |s: &str| if s.is_empty() { Ok(None) } else { real(s).map(Some) };
    r.records()
        .map(|row| {
            let row = row?;
            Ok(CsvRow {
                n: row[0].parse().map_err(|_| bad(&row[0]))?,
                measured_error: real(&row[1])?,
                closed_form_error: opt(&row[2])?,
                abs_gap: opt(&row[3])?,
            })
        })
        .collect()
}

fn csv_io(e: csv::Error, path: &Path) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::Csv(e)
    }
}

/// Theoretical limit of `n^q · error` and an explanatory note.
fn leading_reference(scheme: &Scheme, u0: &InitialCondition, t: f64) -> (Option<f64>, Option<String>) {
    if !matches!(u0, InitialCondition::Sin) {
        return (None, None);
    }
    match scheme {
        Scheme::Heat {
            kind: HeatScheme::G1,
            params,
        } => {
            let c = g1_sin_leading_coefficient(params, t);
            let a2t = params.a() * params.a() * t;
            let bare = a2t * a2t / 6.0;
            (
                Some(c),
                Some(format!(
                    "limit of n*error is exp(-a^2 t)*a^4 t^2/6 = {c:.7}; the constant a^4 t^2/6 = {bare:.7} \
                     lacks the exp(-a^2 t) factor"
                )),
            )
        }
        Scheme::Transport {
            scheme: TransportScheme::Power(s),
        } => (
            Some(s.a() * t.powf(s.k() + 1.0)),
            Some("limit of n^k*error is a*t^(k+1)".into()),
        ),
        Scheme::Transport {
            scheme: TransportScheme::Slow(s),
        } => (
            Some(t.powf(1.0 + s.gamma())),
            Some("limit of n^gamma*error is t^(1+gamma)".into()),
        ),
        _ => (None, None),
    }
}

/// Computes the report without touching the file system.
pub fn compute_report(cfg: &ExperimentConfig) -> Result<(Problem, RunReport)> {
    let start = Instant::now();
    let problem = cfg.problem()?;
    let records = error_curve_with_cap(&problem, &cfg.n.values(), cfg.atom_cap)?;
    let fit = loglog_fit(&records, cfg.fit_min).ok();
    let expected = problem.scheme.expected_order(&problem.initial);
    let order = cfg.order.unwrap_or(expected);
    let leading = leading_coefficient(&records, order).ok().map(|estimate| {
        let (reference, note) = if order == expected {
            leading_reference(&problem.scheme, &problem.initial, problem.t)
        } else {
            (None, None)
        };
        LeadingReport {
            estimate,
            reference,
            note,
        }
    });
    let conjecture_probe = conjecture_bound_probe(&records, cfg.probe_order).ok();
    let report = RunReport {
        config: cfg.to_pairs(),
        records,
        fit,
        leading_coefficient: leading,
        conjecture_probe,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    Ok((problem, report))
}

/// Runs `cfg` and writes the requested outputs into `out_dir`, which
/// overrides `cfg.output_dir`. Returns the report and the files written.
pub fn run_experiment(cfg: &ExperimentConfig, out_dir: Option<&Path>) -> Result<(RunReport, Vec<PathBuf>)> {
    let (problem, mut report) = compute_report(cfg)?;
    let dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| cfg.output_dir.clone());
    let mut written = Vec::new();
    if cfg.outputs.is_empty() {
        return Ok((report, written));
    }
    let dir = dir.ok_or_else(|| Error::validation("output_dir", "no output directory given"))?;
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let start = Instant::now();

    if cfg.outputs.contains(&OutputKind::Csv) {
        let path = dir.join(CSV_FILE);
        write_errors_csv(&report.records, &path)?;
        written.push(path);
    }
    if cfg.outputs.contains(&OutputKind::Svg) {
        written.extend(write_plots(&problem, &report, cfg, &dir)?);
    }
    report.wall_time_seconds += start.elapsed().as_secs_f64();
    if cfg.outputs.contains(&OutputKind::Json) {
        let path = dir.join(JSON_FILE);
        fs::write(&path, report.to_json()?).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok((report, written))
}

fn write_plots(problem: &Problem, report: &RunReport, cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let label = format!(
        "{} / {} / {} / t = {}",
        problem.scheme.equation(),
        problem.scheme.id(),
        problem.initial.id(),
        problem.t
    );

    let g = problem.grid;
    let coarse = Grid::new(g.lower(), g.upper(), g.count().min(OVERLAY_POINTS))?;
    let xs: Vec<f64> = coarse.points().collect();
    let exact: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| Ok((x, problem.scheme.exact(&problem.initial, problem.t, x)?)))
        .collect::<Result<_>>()?;
    let mut series = vec![Series::new("exact solution", exact)];
    for r in report.records.iter().take(2) {
        let measure = problem.scheme.composed_measure(problem.t, r.n, cfg.atom_cap)?;
        let action = MeasureAction::new(&measure, &problem.initial);
        series.push(Series::new(
            format!("approximation, n = {}", r.n),
            xs.iter().map(|&x| (x, action.value(x))).collect(),
        ));
    }
    let overlay = PlotData {
        title: format!("Solution and approximations: {label}"),
        x_label: "x".into(),
        y_label: "u(t, x)".into(),
        series,
        fit: None,
    };
    let path = dir.join(OVERLAY_FILE);
    emit_plot(&overlay, PlotStyle::Overlay, &path)?;
    written.push(path);

    let measured: Vec<(f64, f64)> = report
        .records
        .iter()
        .map(|r| (r.n as f64, r.measured_error))
        .collect();
    let mut series = vec![Series::new("measured error", measured)];
    let closed: Vec<(f64, f64)> = report
        .records
        .iter()
        .filter_map(|r| r.closed_form_error.map(|c| (r.n as f64, c)))
        .collect();
    if !closed.is_empty() {
        series.push(Series::new("closed-form error", closed));
    }
    let mut errors = PlotData {
        title: format!("Sup-norm error: {label}"),
        x_label: "n".into(),
        y_label: "error".into(),
        series,
        fit: None,
    };
    let path = dir.join(ERROR_FILE);
    emit_plot(&errors, PlotStyle::Error, &path)?;
    written.push(path);

    if errors.series[0].points.iter().any(|p| p.1 > 0.0) {
        errors.title = format!("Convergence speed: {label}");
        errors.x_label = "n (log scale)".into();
        errors.y_label = "error (log scale)".into();
        errors.fit = report.fit;
        let path = dir.join(LOGLOG_FILE);
        emit_plot(&errors, PlotStyle::LogLog, &path)?;
        written.push(path);
    }
    Ok(written)
}
