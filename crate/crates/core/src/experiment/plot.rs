//! Dependency-free SVG line plots.
//!
//! Output is a pure function of the input: coordinates are printed with a
//! fixed number of decimals and no timestamps or random ids are emitted.

use std::fmt::Write as _;
use std::path::Path;

use crate::analysis::RegressionFit;
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 60.0;
const PALETTE: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    /// Functions of x drawn as polylines.
    Overlay,
    /// Error against n on linear axes, with markers.
    Error,
    /// Error against n on log10 axes, with the fitted line.
    LogLog,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Series {
            name: name.into(),
            points,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Drawn only in [`PlotStyle::LogLog`].
    pub fit: Option<RegressionFit>,
}

/// Slope label in the form `slope ≈ −2.00`, with a true minus sign.
pub fn slope_annotation(slope: f64) -> String {
    let text = format!("{:.2}", slope);
    format!("slope ≈ {}", text.replacen('-', "\u{2212}", 1))
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Option<Axis> {
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if !lo.is_finite() || !hi.is_finite() {
            return None;
        }
        let (lo, hi) = if log {
            (lo.floor(), hi.ceil().max(lo.floor() + 1.0))
        } else if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            (lo - 1.0, hi + 1.0)
        } else {
            let pad = 0.05 * (hi - lo);
            (lo - pad, hi + pad)
        };
        Some(Axis { lo, hi, log })
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let step = ((self.hi - self.lo) / 8.0).ceil().max(1.0);
            let mut out = Vec::new();
            let mut k = self.lo;
            while k <= self.hi + 1e-9 {
                out.push((k, format!("1e{}", k as i64)));
                k += step;
            }
            return out;
        }
        let raw = (self.hi - self.lo) / 6.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| *s >= raw)
            .unwrap_or(10.0 * mag);
        let decimals = (-step.log10().floor()).max(0.0) as usize;
        let mut out = Vec::new();
        let mut v = (self.lo / step).ceil() * step;
        while v <= self.hi + step * 1e-9 {
            let label = format!("{:.*}", decimals, if v.abs() < step * 1e-9 { 0.0 } else { v });
            out.push((v, label.replacen('-', "\u{2212}", 1)));
            v += step;
        }
        out
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders `data` as a standalone SVG document.
pub fn render_svg(data: &PlotData, style: PlotStyle) -> Result<String> {
    let log = style == PlotStyle::LogLog;
    let transform = |(x, y): (f64, f64)| -> Option<(f64, f64)> {
        if log {
            (x > 0.0 && y > 0.0).then(|| (x.log10(), y.log10()))
        } else {
            (x.is_finite() && y.is_finite()).then_some((x, y))
        }
    };
    let series: Vec<(&str, Vec<(f64, f64)>)> = data
        .series
        .iter()
        .map(|s| (s.name.as_str(), s.points.iter().copied().filter_map(transform).collect()))
        .collect();
    let all = || series.iter().flat_map(|(_, p)| p.iter().copied());
    let (Some(xa), Some(ya)) = (
        Axis::fit(all().map(|p| p.0), log),
        Axis::fit(all().map(|p| p.1), log),
    ) else {
        return Err(Error::domain("plot has no drawable points"));
    };

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - xa.lo) / (xa.hi - xa.lo) * pw;
    let sy = |y: f64| TOP + (ya.hi - y) / (ya.hi - ya.lo) * ph;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(&data.title)
    );
    let _ = writeln!(
        w,
        r#"<clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/></clipPath>"#
    );

    for (v, label) in xa.ticks() {
        let x = sx(v);
        let _ = writeln!(
            w,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#e0e0e0"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"##,
            TOP + ph,
            TOP + ph + 18.0
        );
    }
    for (v, label) in ya.ticks() {
        let y = sy(v);
        let _ = writeln!(
            w,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/><text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        w,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 16.0,
        escape(&data.x_label)
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&data.y_label)
    );

    for (i, (name, points)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash = if i % 2 == 1 { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            w,
            r#"<polyline class="series" data-name="{}" clip-path="url(#plot-area)" fill="none" stroke="{color}" stroke-width="1.6"{dash} points="{}"/>"#,
            escape(name),
            path.join(" ")
        );
        if style != PlotStyle::Overlay {
            for p in &path {
                let (x, y) = p.split_once(',').unwrap_or(("0", "0"));
                let _ = writeln!(w, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{color}"/>"#);
            }
        }
    }

    let mut legend: Vec<(String, &str, bool)> = series
        .iter()
        .enumerate()
        .map(|(i, (name, _))| (name.to_string(), PALETTE[i % PALETTE.len()], i % 2 == 1))
        .collect();

    if let (true, Some(fit)) = (log, data.fit) {
        let (n0, n1) = (fit.window.0 as f64, fit.window.1 as f64);
        let (x0, x1) = (n0.log10(), n1.log10());
        let y = |x: f64| fit.intercept + fit.slope * x;
        let _ = writeln!(
            w,
            r##"<line class="fit" clip-path="url(#plot-area)" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#333333" stroke-width="1.2" stroke-dasharray="2 3"/>"##,
            sx(x0),
            sy(y(x0)),
            sx(x1),
            sy(y(x1))
        );
        let _ = writeln!(
            w,
            r#"<text class="slope" x="{:.2}" y="{:.2}">{}</text>"#,
            LEFT + 12.0,
            TOP + ph - 12.0,
            slope_annotation(fit.slope)
        );
        legend.push((format!("fit on n ∈ [{}, {}]", fit.window.0, fit.window.1), "#333333", true));
    }

    let lx = LEFT + pw - 200.0;
    let mut ly = TOP + 16.0;
    let _ = writeln!(
        w,
        r##"<rect x="{:.2}" y="{:.2}" width="192" height="{:.2}" fill="white" fill-opacity="0.85" stroke="#999999"/>"##,
        lx - 6.0,
        TOP + 4.0,
        legend.len() as f64 * 18.0 + 6.0
    );
    for (name, color, dashed) in &legend {
        let dash = if *dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            w,
            r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"{dash}/><text class="legend" x="{:.2}" y="{:.2}">{}</text>"#,
            ly - 4.0,
            lx + 24.0,
            ly - 4.0,
            lx + 30.0,
            ly,
            escape(name)
        );
        ly += 18.0;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders and writes an SVG file.
pub fn emit_plot(data: &PlotData, style: PlotStyle, path: &Path) -> Result<()> {
    let svg = render_svg(data, style)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
