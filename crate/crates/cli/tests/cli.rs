use std::path::Path;
use std::process::{Command, Output};

use homlab_cli::{execute, ExperimentConfig};
use serde_json::{json, Value};

fn homlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn homog_on_graph6_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c5.g6"), "Dhc\n").unwrap();
    std::fs::write(dir.path().join("p4.txt"), "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let r = stdout_json(&homlab(&["homog", "--input", "c5.g6"], dir.path()));
    assert_eq!(r["command"], "homog");
    assert_eq!(r["result"]["homogeneous"], true);
    let r = stdout_json(&homlab(&["homog", "--input", "p4.txt"], dir.path()));
    assert_eq!(r["result"]["homogeneous"], false);
    assert!(r["result"]["witness"].is_object());
}

#[test]
fn census_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = homlab(&["sumfree", "census", "--n", "4", "--emit", "csv"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    let row = rows.records().next().unwrap().unwrap();
    let total = headers.iter().position(|h| h == "total").unwrap();
    assert_eq!(&row[total], "9");
}

#[test]
fn empty_table_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = homlab(&["spectrum", "--max-order", "5", "--emit", "csv"], dir.path());
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn emit_to_file_and_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let out = homlab(&["sumfree", "census", "--n", "6", "--emit", "census.csv"], dir.path());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("census.csv")).unwrap();
    assert!(written.starts_with("n,total"));

    let out = homlab(&["sumfree", "gamma", "--set", "1,4", "--window", "6", "--emit", "g6"], dir.path());
    assert!(out.status.success());
    let g = homlab::io::parse_graph(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(g.order(), 6);
    assert!(g.has_edge(0, 1) && g.has_edge(0, 4) && !g.has_edge(0, 2));
}

#[test]
fn config_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = homlab(&["run", "--config", "missing.toml"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.toml"));

    std::fs::write(dir.path().join("bad.toml"), "command = \"sumfree\"\naction = \"census\"\nbogus = 1\n").unwrap();
    let out = homlab(&["run", "--config", "bad.toml"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.toml:3:1"));

    assert_ne!(homlab_cli::main_with_args(["homlab", "sumfree", "census", "--n", "x"]), 0);
}

#[test]
fn command_line_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("census.toml"), "command = \"sumfree\"\naction = \"census\"\nn = 20\n").unwrap();
    let r = stdout_json(&homlab(&["run", "--config", "census.toml"], dir.path()));
    assert_eq!(r["result"]["census"]["total"], 9583);
    let r = stdout_json(&homlab(&["sumfree", "--config", "census.toml", "--n", "4"], dir.path()));
    assert_eq!(r["config"]["n"], 4);
    assert_eq!(r["config"]["action"], "census");
    assert_eq!(r["result"]["census"]["total"], 9);
}

#[test]
fn reports_are_reproducible() {
    let config = |workers: Option<usize>| -> ExperimentConfig {
        let mut v = json!({"command": "sumfree", "action": "random", "trials": 400, "N": 300, "seed": 11});
        if let Some(w) = workers {
            v["workers"] = json!(w);
        }
        serde_json::from_value(v).unwrap()
    };
    let a = execute(&config(None)).unwrap();
    let b = execute(&config(None)).unwrap();
    assert_eq!(a.deterministic_json(), b.deterministic_json());
    let s = execute(&config(Some(1))).unwrap();
    assert_eq!(a.result, s.result);
    assert_eq!(s.config["workers"], 1);
    assert!(execute(&config(Some(0))).is_err());
}
