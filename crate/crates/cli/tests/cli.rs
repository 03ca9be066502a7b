use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chernoff-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut all = vec!["run", "--out", dir.to_str().unwrap()];
    all.extend_from_slice(args);
    lab(&all)
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn slope(dir: &Path) -> f64 {
    report(dir)["fit"]["slope"].as_f64().unwrap()
}

#[test]
fn list_presets_prints_catalog() {
    let out = lab(&["list-presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["fig-transport-sin", "fig-heat-sin-g2", "fig-heat-expabs-g3", "fig-transport-slow-sixth"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn transport_sin_run_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["equation=transport", "scheme=power:1,1", "initial=sin", "t=1", "n=1..100"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["errors.csv", "report.json", "overlay.svg", "error.svg", "loglog.svg"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let csv = fs::read_to_string(dir.path().join("errors.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("n,measured_error,closed_form_error,abs_gap"));
    assert_eq!(csv.lines().count(), 101);
    let s = slope(dir.path());
    assert!((-1.02..=-0.98).contains(&s), "slope {s}");
    let r = report(dir.path());
    for key in ["config", "records", "fit", "leading_coefficient", "conjecture_probe", "wall_time_seconds"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    let svg = fs::read_to_string(dir.path().join("loglog.svg")).unwrap();
    assert!(svg.contains("slope ≈ −1.00"));
}

#[test]
fn heat_sin_g2_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["--preset", "fig-heat-sin-g2", "outputs=json"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = slope(dir.path());
    assert!((-2.1..=-1.9).contains(&s), "slope {s}");
}

#[test]
fn heat_expabs_g1_slope_and_empty_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["--preset", "fig-heat-expabs-g1", "outputs=csv,json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = slope(dir.path());
    assert!((-1.15..=-0.85).contains(&s), "slope {s}");
    let csv = fs::read_to_string(dir.path().join("errors.csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",,")));
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(
        &cfg,
        "# heat on sin\nequation=heat\nscheme=g1\ninitial=sin\nt=2\nn=1..64(geometric)\ngrid=0,2pi,501\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = lab(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "scheme=g3",
        "outputs=json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out_dir);
    assert_eq!(r["config"]["scheme"], "g3");
    assert_eq!(r["config"]["grid"], "0,6.283185307179586,501");
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["equation=heat", "scheme=power:1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("scheme incompatible with equation"), "{err}");

    let out = run_in(dir.path(), &["equation=heat", "scheme=g1", "t=-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`t`"));

    let out = run_in(dir.path(), &["--preset", "fig-missing"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["equation=heat", "scheme=g3", "initial=exp-abs", "n=64", "atom_cap=1000"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("atom cap"));
}

#[test]
fn io_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = run_in(
        &blocker.join("sub"),
        &["equation=transport", "scheme=power:1,1", "n=1,2,3"],
    );
    assert_eq!(out.status.code(), Some(4));
    let missing = dir.path().join("absent.cfg");
    let out = lab(&["run", "--config", missing.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn identical_runs_give_identical_outputs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["--preset", "fig-heat-sin-g1", "grid=0,2pi,2001"];
    assert!(run_in(a.path(), &args).status.success());
    assert!(run_in(b.path(), &args).status.success());
    for f in ["errors.csv", "overlay.svg", "error.svg", "loglog.svg"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
    let strip = |dir: &Path| {
        let mut v = report(dir);
        v.as_object_mut().unwrap().remove("wall_time_seconds");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(a.path()), strip(b.path()));
}

#[test]
fn canonical_experiments_finish_quickly() {
    let start = Instant::now();
    let presets = [
        "fig-transport-sin",
        "fig-transport-slow-half",
        "fig-transport-slow-third",
        "fig-transport-slow-sixth",
        "fig-heat-sin-g1",
        "fig-heat-sin-g2",
        "fig-heat-sin-g3",
        "fig-heat-sin-g1-leading",
        "fig-heat-expabs-g1",
        "fig-heat-expabs-g2",
        "fig-heat-expabs-g3",
    ];
    for p in presets {
        let dir = tempfile::tempdir().unwrap();
        let out = run_in(dir.path(), &["--preset", p]);
        assert!(out.status.success(), "{p}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "{elapsed} s");
}
