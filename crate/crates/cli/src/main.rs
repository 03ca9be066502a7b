//! `chernoff-lab`: runs Chernoff approximation experiments and writes
//! `errors.csv`, `report.json` and SVG plots.
//!
//! Exit codes: 0 success, 2 validation error, 3 resource error, 4 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use chernoff_core::experiment::{load_config, run_experiment, RunReport, PRESETS};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chernoff-lab", version, about = "Chernoff approximation convergence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment. Layers merge as preset, then file, then overrides.
    Run {
        /// Config file of key=value lines.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Built-in experiment to start from (see list-presets).
        #[arg(long)]
        preset: Option<String>,
        /// Output directory; overrides the output_dir key.
        #[arg(long)]
        out: Option<PathBuf>,
        /// key=value overrides, e.g. t=2 n=1..64(geometric).
        overrides: Vec<String>,
    },
    /// Print the built-in experiment catalog.
    ListPresets,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListPresets => {
            let width = PRESETS.iter().map(|p| p.name.len()).max().unwrap_or(0);
            for p in PRESETS {
                println!("{:width$}  {}", p.name, p.description);
                println!("{:width$}  {}", "", p.config);
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            config,
            preset,
            out,
            overrides,
        } => {
            let result = load_config(config.as_deref(), preset.as_deref(), &overrides)
                .and_then(|cfg| run_experiment(&cfg, out.as_deref()));
            match result {
                Ok((report, files)) => {
                    print_summary(&report);
                    for f in files {
                        println!("wrote {}", f.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
    }
}

fn print_summary(report: &RunReport) {
    let get = |k: &str| report.config.get(k).map(String::as_str).unwrap_or("?");
    println!(
        "{} / {} / {} / t = {}",
        get("equation"),
        get("scheme"),
        get("initial"),
        get("t")
    );
    println!("{:>8}  {:>14}  {:>14}", "n", "measured", "closed form");
    for r in &report.records {
        let closed = r
            .closed_form_error
            .map(|c| format!("{c:14.6e}"))
            .unwrap_or_else(|| format!("{:>14}", "-"));
        println!("{:>8}  {:14.6e}  {closed}", r.n, r.measured_error);
    }
    match &report.fit {
        Some(f) => println!(
            "fit on n in [{}, {}]: slope {:.4}, intercept {:.4}, r^2 {:.6}",
            f.window.0, f.window.1, f.slope, f.intercept, f.r_squared
        ),
        None => println!("fit: not enough records"),
    }
    if let Some(l) = &report.leading_coefficient {
        print!(
            "n^{} * error: {:.7} at n = {}, extrapolated {:.7}",
            l.estimate.order, l.estimate.at_largest_n, l.estimate.n, l.estimate.richardson
        );
        match l.reference {
            Some(r) => println!(", theory {r:.7}"),
            None => println!(),
        }
        if let Some(note) = &l.note {
            println!("note: {note}");
        }
    }
    if let Some(p) = &report.conjecture_probe {
        println!(
            "bound probe at order {}: sup {:.6e} at n = {}, {:?}",
            p.order, p.sup_value, p.attained_at_n, p.trend
        );
    }
    println!("wall time {:.3} s", report.wall_time_seconds);
}
