//! End-to-end checks of the qfr binary: exit codes, JSON stability, and the
//! QFR_DATA override.

use std::process::Command;

fn qfr(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qfr"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn reduce_json_roundtrip() {
    let (stdout, _, code) = qfr(&["reduce", "--form", "3,10,9", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["result"]["form"], serde_json::json!(["1", "0", "2"]));
}

#[test]
fn classify_lists() {
    for (p, label) in [("73", "principal"), ("23", "self-reciprocal"), ("3", "reciprocal-pair")] {
        let (stdout, _, code) = qfr(&["classify", "--disc", "328", "--prime", p, "--json"]);
        assert_eq!(code, 0, "{stdout}");
        let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(doc["result"]["label"], label, "p = {p}");
    }
}

#[test]
fn represent_walkthrough() {
    let (stdout, _, code) = qfr(&[
        "represent", "--prime", "8081", "--disc", "328", "--method", "alt", "--form", "2,0,-41",
        "--json",
    ]);
    assert_eq!(code, 0, "{stdout}");
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["value"], "8081");
}

#[test]
fn failure_and_error_codes() {
    let (_, _, code) = qfr(&[
        "represent", "--disc", "-4", "--m", "21", "--factors", "3,7", "--form", "1,0,1",
    ]);
    assert_eq!(code, 1);
    let (_, stderr, code) = qfr(&["reduce", "--form", "not-a-form"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn text_output_is_line_oriented() {
    let (stdout, _, code) = qfr(&["unit", "--disc", "328"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("u: 9"));
    assert!(stdout.contains("norm: -1"));
}

#[test]
fn data_path_override() {
    // Point QFR_DATA at a copy of the embedded tables; behavior unchanged.
    let data = include_str!("../data/tables.json");
    let dir = std::env::temp_dir().join("qfr-test-data");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tables.json");
    std::fs::write(&path, data).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qfr"))
        .env("QFR_DATA", &path)
        .args(["hilbert", "--disc", "-20", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(doc["result"]["h"], 2);
    assert_eq!(doc["result"]["coefficients"][1], "-1264000");
}

#[test]
fn system_subcommand_prints_table_row() {
    let (stdout, _, code) = qfr(&["system", "--disc", "-23", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["result"]["ell"], 3);
    assert_eq!(
        doc["result"]["u_coeffs"],
        serde_json::json!(["1", "-9", "-9", "3"])
    );
}
