//! Experiment pipeline: configuration, preset catalog, runner and plots.

pub mod config;
pub mod plot;
pub mod presets;
pub mod run;

use std::path::Path;

pub use config::{ExperimentConfig, RawConfig};
pub use presets::{find_preset, Preset, PRESETS};
pub use run::{compute_report, read_errors_csv, run_experiment, CsvRow, LeadingReport, RunReport};

use crate::error::{Error, Result};

/// Merges preset, config file and `key=value` overrides, in that order of
/// increasing precedence, and validates the result.
pub fn load_config(
    file: Option<&Path>,
    preset: Option<&str>,
    overrides: &[String],
) -> Result<ExperimentConfig> {
    let mut raw = match preset {
        Some(name) => presets::preset_layer(name)?,
        None => RawConfig::default(),
    };
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        raw.merge(&RawConfig::parse(&text)?);
    }
    let mut layer = RawConfig::default();
    for token in overrides {
        layer.set_token(token)?;
    }
    raw.merge(&layer);
    raw.validate()
}
