use std::process::{Command, Output};

use refstate::cli::parse_csv;

fn refstate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refstate")).args(args).output().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(refstate(&["optimize-single", "--M", "3"]).status.code(), Some(0));
    assert_eq!(refstate(&["bogus"]).status.code(), Some(2));
    assert_eq!(refstate(&["optimize-single"]).status.code(), Some(2));
    assert_eq!(refstate(&["phase", "--M", "10", "--points", "8"]).status.code(), Some(2));
    assert_eq!(refstate(&["compare", "--M", "0"]).status.code(), Some(2));
    assert_eq!(refstate(&["sweep", "--sweep-range", "5:2"]).status.code(), Some(2));
    let out = refstate(&["optimize-single", "--M", "3", "--tol", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tol"));
}

#[test]
fn writes_file_with_metadata_block() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("opt.csv");
    let out = refstate(&["optimize-single", "--M", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let parsed = parse_csv(&text).unwrap();
    assert_eq!(parsed.meta("command"), Some("optimize-single"));
    assert_eq!(parsed.meta("M"), Some("1"));
    assert_eq!(parsed.columns, ["n", "prob"]);
    assert_eq!(parsed.rows.len(), 2);
}

#[test]
fn every_command_runs() {
    for args in [
        &["optimize-single", "--M", "8"][..],
        &["optimize-shared", "--M", "8", "--N", "8"],
        &["ansatz", "--M", "8"],
        &["compare", "--M", "8", "--family", "coherent"],
        &["compare", "--sweep-range", "2:4"],
        &["phase", "--M", "8", "--phases", "kerr", "--family", "binomial"],
        &["sweep", "--sweep-range", "0:6"],
        &["polys", "--M", "0"],
        &["polys", "--M", "8", "--format", "json"],
    ] {
        let out = refstate(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn json_matches_csv_values() {
    let csv = String::from_utf8(refstate(&["ansatz", "--M", "5"]).stdout).unwrap();
    let json = String::from_utf8(refstate(&["ansatz", "--M", "5", "--format", "json"]).stdout).unwrap();
    let parsed = parse_csv(&csv).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["columns"].as_array().unwrap().len(), parsed.columns.len());
    for (i, row) in parsed.rows.iter().enumerate() {
        assert_eq!(v["rows"][i][1].as_str().unwrap(), row[1]);
    }
    assert_eq!(v["metadata"]["epsilon"].as_str(), parsed.meta("epsilon"));
}
