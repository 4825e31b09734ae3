//! End-to-end tests of the `ccqed` binary: output contracts, exit codes, and
//! config-file handling.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ccqed::output::CSV_HEADER;

fn ccqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccqed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn help_exits_zero() {
    let out = ccqed(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("point"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(ccqed(&["bogus-subcommand"]).status.code(), Some(1));
    assert_eq!(
        ccqed(&["sweep", "--delta-range", "nonsense"]).status.code(),
        Some(1)
    );
    assert_eq!(
        ccqed(&["sweep", "--delta-range", "-1:1", "--steps", "1"])
            .status
            .code(),
        Some(1)
    );
    // phase csv without --out cannot place the boundary files
    assert_eq!(ccqed(&["phase", "--format", "csv"]).status.code(), Some(1));
    // gnuplot emission needs a csv file to reference
    assert_eq!(ccqed(&["sweep", "--emit-gnuplot"]).status.code(), Some(1));
}

#[test]
fn point_prints_csv_by_default() {
    let out = ccqed(&["point", "--delta", "0", "--hop", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], CSV_HEADER);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields.len(), 15);
    // resonant small-hopping point: S_atom ~ 1 bit
    let s_atom: f64 = fields[6].parse().unwrap();
    assert!((s_atom - 1.0).abs() < 1e-3);
    assert_eq!(*fields.last().unwrap(), "ok");
}

#[test]
fn point_json_has_schema_fields() {
    let out = ccqed(&["point", "--delta", "-2.5", "--hop", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
    assert_eq!(doc["rows"][0]["status"], "ok");
    assert!(doc["rows"][0]["outputs"]["entropies"]["site"].is_f64());
    assert!(doc.get("boundaries").is_none());
}

#[test]
fn sweep_csv_row_count_and_gnuplot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig3.csv");
    let out = ccqed(&[
        "sweep",
        "--delta-range",
        "-10:10",
        "--steps",
        "21",
        "--hop",
        "0.01",
        "--emit-gnuplot",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 22);
    assert!(text.ends_with('\n'));
    let script = fs::read_to_string(dir.path().join("fig3.gp")).unwrap();
    assert!(script.contains("'fig3.csv'"));
}

#[test]
fn sweep_json_parses_back() {
    let out = ccqed(&[
        "sweep",
        "--delta-range",
        "-1:1",
        "--steps",
        "3",
        "--hop",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["params"]["hop"], 10.0);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn phase_grid_emits_rows_and_boundary_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("phase.csv");
    let out = ccqed(&[
        "phase",
        "--delta-range",
        "-30:10",
        "--steps",
        "50",
        "--hop-range",
        "0.01:20",
        "--hop-steps",
        "50",
        "--emit-gnuplot",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 2501, "header plus 50x50 rows");

    let sf = dir.path().join("phase_boundary_superfluid.dat");
    let pol = dir.path().join("phase_boundary_polaritonic.dat");
    for dat in [&sf, &pol] {
        let content = fs::read_to_string(dat).unwrap();
        assert!(
            content
                .lines()
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .count()
                > 5,
            "{dat:?} should hold a polyline"
        );
    }
    let script = fs::read_to_string(dir.path().join("phase.gp")).unwrap();
    assert!(script.contains("phase_boundary_superfluid.dat"));
    assert!(script.contains("phase_boundary_polaritonic.dat"));
}

#[test]
fn phase_json_includes_boundaries() {
    let out = ccqed(&[
        "phase",
        "--delta-range",
        "-20:10",
        "--steps",
        "31",
        "--hop-range",
        "0.01:20",
        "--hop-steps",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 310);
    let sf = &doc["boundaries"]["superfluid"];
    assert!(sf["level"].as_f64().unwrap() > 0.0);
    assert!(!sf["polylines"].as_array().unwrap().is_empty());
}

#[test]
fn config_file_supplies_defaults_and_cli_wins() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "delta = 50\nhop = 0.01\n").unwrap();

    // config alone: deep photonic point, S_site ~ 1.5
    let out = ccqed(&["--config", conf.to_str().unwrap(), "point"]);
    assert_eq!(out.status.code(), Some(0));
    let s_site: f64 = stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(5)
        .unwrap()
        .parse()
        .unwrap();
    assert!((s_site - 1.5).abs() < 0.02);

    // CLI flag overrides the config delta: resonance instead
    let out = ccqed(&["--config", conf.to_str().unwrap(), "point", "--delta", "0"]);
    let s_site: f64 = stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(5)
        .unwrap()
        .parse()
        .unwrap();
    assert!(s_site < 0.05);

    // broken or missing config files are usage errors
    fs::write(&conf, "delta 50\n").unwrap();
    assert_eq!(
        ccqed(&["--config", conf.to_str().unwrap(), "point"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ccqed(&["--config", "/nonexistent/run.conf", "point"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn self_check_passes_and_prints_table() {
    let out = ccqed(&["self-check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in [
        "basis-enumeration",
        "number-conservation",
        "fullspace-ground",
        "analytic-zero-hopping",
        "schmidt-vs-density",
        "gauge-invariance",
    ] {
        assert!(text.contains(name), "missing check {name}");
    }
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));

    let out = ccqed(&["self-check", "--delta", "-10", "--hop", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_written_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = ccqed(&[
        "sweep",
        "--delta-range",
        "-2:2",
        "--steps",
        "5",
        "--hop",
        "0.5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert!(Path::new(&path).exists());
}
