//! End-to-end checks of the command-line binary: exit codes, output files,
//! reproducibility. Fast scenarios only (fig1 quadrature, helium counting
//! run); the long evolution presets are exercised by the acceptance suite.

use std::path::Path;
use std::process::{Command, Output};

use wpdiff::config::to_ini;
use wpdiff::scenarios::preset_config;

fn wpdiff() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wpdiff"));
    cmd.env_remove("WPDIFF_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    wpdiff().args(args).output().expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn strip_wall_clock(report: &str) -> String {
    report[..report.find("wall_clock_ms=").expect("report has a wall-clock line")].to_string()
}

#[test]
fn preset_fig1_writes_named_outputs_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let first = run(&["preset", "fig1", "--out", out_a.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    assert!(stdout(&first).contains("peaks.count=3"));
    let second = run(&["preset", "fig1", "--out", out_b.to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));

    for name in ["fig1_profile.csv", "fig1_closed_form.csv", "fig1_report.txt"] {
        assert!(out_a.join(name).is_file(), "missing {name}");
    }
    assert_eq!(
        read(&out_a.join("fig1_profile.csv")),
        read(&out_b.join("fig1_profile.csv")),
        "same config must produce byte-identical CSVs"
    );
    assert_eq!(
        read(&out_a.join("fig1_closed_form.csv")),
        read(&out_b.join("fig1_closed_form.csv"))
    );
    assert_eq!(
        strip_wall_clock(&read(&out_a.join("fig1_report.txt"))),
        strip_wall_clock(&read(&out_b.join("fig1_report.txt"))),
        "reports are deterministic except the wall-clock line"
    );
}

#[test]
fn preset_accepts_flag_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["preset", "--preset", "fig1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(dir.path().join("fig1_report.txt").is_file());
}

#[test]
fn unknown_preset_exits_one_without_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("never");
    let out = run(&["preset", "fig2", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown preset"));
    assert!(!target.exists(), "failed run must not create outputs");
}

#[test]
fn malformed_config_exits_one_without_partial_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let good = to_ini(&preset_config("fig1").unwrap());
    let target = dir.path().join("out");
    let cases = [
        ("typo.cfg", good.replace("sigma =", "sgima ="), "missing required key"),
        ("extra.cfg", format!("{good}\n[packet]\nwobble = 3\n"), "unknown key"),
    ];
    for (name, text, needle) in cases {
        let cfg_path = dir.path().join(name);
        std::fs::write(&cfg_path, text).unwrap();
        let out = run(&[
            "analytic",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            target.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(1), "{name} stderr: {}", stderr(&out));
        assert!(stderr(&out).contains(needle), "{name}: {}", stderr(&out));
        assert!(!target.exists(), "malformed config must leave no partial outputs");
    }
}

#[test]
fn missing_config_file_exits_one() {
    let out = run(&["analytic", "--config", "/nonexistent/run.cfg", "--out", "/tmp/x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot read config"));
}

#[test]
fn subcommand_mode_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let analytic_cfg = dir.path().join("analytic.cfg");
    std::fs::write(&analytic_cfg, to_ini(&preset_config("fig1").unwrap())).unwrap();
    let evolved_cfg = dir.path().join("evolved.cfg");
    std::fs::write(&evolved_cfg, to_ini(&preset_config("fig4").unwrap())).unwrap();
    let target = dir.path().join("out");

    let out = run(&[
        "simulate",
        "--config",
        analytic_cfg.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("belongs to another subcommand"));

    let out = run(&[
        "analytic",
        "--config",
        evolved_cfg.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("belongs to another subcommand"));
    assert!(!target.exists());
}

#[test]
fn analytic_runs_a_config_file_and_nk_override_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.cfg");
    std::fs::write(&cfg_path, to_ini(&preset_config("fig1").unwrap())).unwrap();
    let target = dir.path().join("out");
    let out = run(&[
        "analytic",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    for name in ["run_profile.csv", "run_closed_form.csv", "run_report.txt"] {
        assert!(target.join(name).is_file(), "missing {name}");
    }
    assert!(read(&target.join("run_report.txt")).contains("peaks.count=3\n"));

    let out = run(&[
        "analytic",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
        "--nk",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(1), "nk floor applies to the override");
    assert!(stderr(&out).contains("nk must be >= 64"));
}

/// 15-sample gaussian bump centred on `center`, written as a scalar profile.
fn write_bump(path: &Path, center: f64) {
    let mut text = String::from("x,re,im,abs\n");
    for k in 0..15 {
        let x = k as f64;
        let a = (-(x - center) * (x - center) / 4.0).exp();
        text.push_str(&format!("{x},{a},0,{a}\n"));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn compare_reports_metrics_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    write_bump(&a, 7.0);
    write_bump(&b, 8.0);
    let target = dir.path().join("out");
    let out = run(&[
        "compare",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("compare.max_offset=1\n"), "shifted bump lands one sample away: {text}");
    assert!(text.contains("compare.matched=1\n"));
    let report = read(&target.join("compare_report.txt"));
    assert!(report.contains("compare.max_offset=1\n"));
}

#[test]
fn compare_rejects_mismatched_grids() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    write_bump(&a, 7.0);
    std::fs::write(&b, "x,re,im,abs\n0,1,0,1\n1,0.5,0,0.5\n").unwrap();
    let out = run(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("different grids"));
}

#[test]
fn sweep_expands_axes_into_hashed_point_dirs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("sweep.cfg");
    let base = to_ini(&preset_config("fig1").unwrap());
    std::fs::write(&cfg_path, format!("{base}\n[sweep]\nrun.nk = 4800, 6400\n")).unwrap();

    let target = dir.path().join("out");
    let out = run(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let index = read(&target.join("sweep_index.txt"));
    let lines: Vec<&str> = index.lines().collect();
    assert_eq!(lines.len(), 2, "two points: {index}");
    assert!(lines[0].contains("run.nk=4800"));
    assert!(lines[1].contains("run.nk=6400"));
    for line in &lines {
        let point = line.split_whitespace().next().unwrap();
        let point_dir = target.join(point);
        for name in ["run.cfg", "run_profile.csv", "run_closed_form.csv", "run_report.txt"] {
            assert!(point_dir.join(name).is_file(), "{point}: missing {name}");
        }
    }
    let dir_a = target.join(lines[0].split_whitespace().next().unwrap());
    let dir_b = target.join(lines[1].split_whitespace().next().unwrap());
    assert!(read(&dir_a.join("run.cfg")).contains("nk = 4800"));
    assert!(read(&dir_b.join("run.cfg")).contains("nk = 6400"));

    // Same sweep into a fresh directory reproduces every point byte for byte.
    let target2 = dir.path().join("out2");
    let rerun = run(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        target2.to_str().unwrap(),
        "--threads",
        "1",
    ]);
    assert_eq!(rerun.status.code(), Some(0));
    assert_eq!(read(&target2.join("sweep_index.txt")), index);
    for line in &lines {
        let point = line.split_whitespace().next().unwrap();
        assert_eq!(
            read(&target.join(point).join("run_profile.csv")),
            read(&target2.join(point).join("run_profile.csv")),
            "{point}: sweep outputs must be deterministic"
        );
    }
}

#[test]
fn sweep_without_axes_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("plain.cfg");
    std::fs::write(&cfg_path, to_ini(&preset_config("fig1").unwrap())).unwrap();
    let target = dir.path().join("out");
    let out = run(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("[sweep] section"));
    assert!(!target.exists());
}

#[test]
fn non_sweep_subcommands_reject_sweep_sections() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("sweep.cfg");
    let base = to_ini(&preset_config("fig1").unwrap());
    std::fs::write(&cfg_path, format!("{base}\n[sweep]\nrun.nk = 4800, 6400\n")).unwrap();
    let out = run(&["analytic", "--config", cfg_path.to_str().unwrap(), "--out", "/tmp/x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("only valid for the sweep"));
}

#[test]
fn thread_count_validation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = wpdiff()
        .env("WPDIFF_THREADS", "abc")
        .args(["preset", "fig1", "--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a thread count"));

    let out = run(&["preset", "fig1", "--out", dir.path().to_str().unwrap(), "--threads", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("thread count must be >= 1"));
}

#[test]
fn experiment_subcommand_runs_builtin_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["experiment", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    for name in ["experiment_counts.csv", "experiment_profile.csv", "experiment_report.txt"] {
        assert!(dir.path().join(name).is_file(), "missing {name}");
    }
    let report = read(&dir.path().join("experiment_report.txt"));
    assert!(report.contains("transmission.agrees=true\n"));
    assert!(report.contains("detector.samples=34\n"));
    let counts = read(&dir.path().join("experiment_counts.csv"));
    assert!(counts.starts_with("t,counts\n"));
    assert_eq!(counts.lines().count(), 35, "header plus one row per sample");
}
