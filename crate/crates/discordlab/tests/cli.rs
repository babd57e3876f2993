use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use discordlab::format::{SCAN_HEADER, SURVEY_HEADER, TRAJECTORY_HEADER};

fn discordlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_discordlab")).args(args).output().unwrap()
}

fn write_config(dir: &Path, json: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

/// Parses a CSV with a known header into rows of fields.
fn parse(csv: &str, header: &str) -> Vec<Vec<String>> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(header));
    let width = header.split(',').count();
    lines
        .map(|l| {
            let row: Vec<String> = l.split(',').map(str::to_string).collect();
            assert_eq!(row.len(), width, "{l}");
            row
        })
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

#[test]
fn evolve_writes_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    let config = write_config(
        dir.path(),
        r#"{"command": "evolve", "state": {"type": "bds", "c1": 1, "c2": -0.6, "c3": 0.6}, "a": 1, "tau": 0.5, "nu_max": 3, "steps": 3000}"#,
    );
    let o = discordlab(&["evolve", "--config", &config, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = parse(&fs::read_to_string(&out).unwrap(), TRAJECTORY_HEADER);
    assert_eq!(rows.len(), 3000);
    assert!((num(&rows[0][1]) - 0.278072).abs() < 1e-5);
    assert_eq!(num(&rows[2999][0]), 3.0);
    for r in &rows {
        assert!(["sigma_x", "sigma_z", "intermediate"].contains(&r[5].as_str()));
        for f in &r[..5] {
            num(f);
        }
    }
}

#[test]
fn flags_override_config_values() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"tau": 0.5, "steps": 50}"#);
    let o = discordlab(&["evolve", "--config", &config, "--steps", "7", "--epsilon", "0.02"]);
    assert!(o.status.success());
    let rows = parse(&String::from_utf8(o.stdout).unwrap(), TRAJECTORY_HEADER);
    assert_eq!(rows.len(), 7);
}

#[test]
fn survey_is_byte_stable() {
    let run = || discordlab(&["survey", "--n", "10", "--seed", "42"]);
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let rows = parse(&String::from_utf8(a.stdout).unwrap(), SURVEY_HEADER);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "42");
    assert_eq!(rows[0][1], "10");
    assert_eq!(rows[0][2], "0");
    let classes: usize = rows[0][3..].iter().map(|s| s.parse::<usize>().unwrap()).sum();
    assert_eq!(classes, 10);
}

#[test]
fn output_does_not_depend_on_destination() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let args = ["evolve", "--tau", "5", "--nu-max", "0.5", "--steps", "11"];
    let to_stdout = discordlab(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    assert!(discordlab(&with_out).status.success());
    assert_eq!(to_stdout.stdout, fs::read(&out).unwrap());
}

#[test]
fn unknown_command_is_a_usage_error() {
    let o = discordlab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn invalid_inputs_exit_2_with_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["evolve".into(), "--tau".into(), "0".into()],
        vec!["evolve".into(), "--c1".into(), "1".into(), "--c2".into(), "1".into(), "--c3".into(), "1".into()],
        vec!["evolve".into(), "--steps".into(), "1".into()],
        vec!["survey".into(), "--n".into(), "0".into()],
        vec!["scan-basis".into(), "--config".into(), write_config(dir.path(), r#"{"nu": []}"#)],
    ];
    for args in cases {
        let o = Command::new(env!("CARGO_BIN_EXE_discordlab")).args(&args).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert!(err["message"].is_string(), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn malformed_or_mismatched_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for json in [r#"{"stepz": 3}"#, r#"{"command": "survey"}"#, "not json", r#"{"state": {"type": "ghz"}}"#] {
        let config = write_config(dir.path(), json);
        let o = discordlab(&["evolve", "--config", &config]);
        assert_eq!(o.status.code(), Some(2), "{json}");
    }
}

#[test]
fn io_failures_exit_3() {
    let o = discordlab(&["survey", "--config", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(3));
    let o = discordlab(&["survey", "--n", "2", "--out", "/definitely/not/here/out.csv"]);
    assert_eq!(o.status.code(), Some(3));
}

fn argmax(rows: &[Vec<String>], nu: f64) -> f64 {
    rows.iter()
        .filter(|r| num(&r[0]) == nu)
        .max_by(|a, b| num(&a[2]).total_cmp(&num(&b[2])))
        .map(|r| num(&r[1]))
        .unwrap()
}

#[test]
fn scan_basis_peaks_at_sigma_x_for_initial_bds() {
    let o = discordlab(&["scan-basis", "--nu", "0"]);
    assert!(o.status.success());
    let rows = parse(&String::from_utf8(o.stdout).unwrap(), SCAN_HEADER);
    assert_eq!(rows.len(), 721);
    assert!((argmax(&rows, 0.0) - FRAC_PI_4).abs() <= FRAC_PI_2 / 720.0);
}

#[test]
fn scan_basis_shows_interior_peak_for_perturbed_state() {
    let detect = discordlab(&["detect", "--epsilon", "0.02", "--tau", "5", "--nu-max", "0.05"]);
    assert!(detect.status.success());
    let summary: serde_json::Value = serde_json::from_slice(&detect.stdout).unwrap();
    assert_eq!(summary["n_sudden"], 0);

    // Find a ν inside the passage from the detector's refined samples.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let o = discordlab(&["detect", "--epsilon", "0.02", "--nu-max", "0.05", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = parse(&fs::read_to_string(&out).unwrap(), TRAJECTORY_HEADER);
    let nu = rows.iter().find(|r| (num(&r[4]) - 3.0 * FRAC_PI_4 / 2.0).abs() < 0.1).unwrap()[0].clone();

    let scan = discordlab(&["scan-basis", "--epsilon", "0.02", "--nu", &nu]);
    assert!(scan.status.success());
    let rows = parse(&String::from_utf8(scan.stdout).unwrap(), SCAN_HEADER);
    let peak = argmax(&rows, num(&nu));
    assert!(peak > FRAC_PI_4 + 0.05 && peak < FRAC_PI_2 - 0.05, "{peak}");
}

#[test]
fn detect_reports_sudden_events_for_bds() {
    let o = discordlab(&["detect", "--tau", "5", "--nu-max", "3"]);
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["n_sudden"], 3);
    assert_eq!(summary["events"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_reports_condition_sides() {
    let o = discordlab(&["classify", "--nu", "0"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let rows = parse(&text, discordlab::format::CLASSIFY_HEADER);
    assert_eq!(rows[0][7], "sigma_x");
    assert_eq!(rows[0][13], "true");
}
