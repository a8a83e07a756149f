mod common;

use std::io::Write;

use bihom_core::XPoly;
use common::{bihom, data, without_timings};
use serde_json::Value;

fn json(out: &std::process::Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn job(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn implicitize_lci_example() {
    let input = data("lci_base_point.json");
    let out = bihom(&["implicitize", "--input", path(&input), "--json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["degree"], 7);
    assert_eq!(v["result"]["k"], 1);
    assert_eq!(v["result"]["route"], "base_points");
    assert_eq!(v["result"]["pivots"], serde_json::json!(["s*t"]));
    assert_eq!(
        v["result"]["columns"],
        serde_json::json!(["s*t", "s", "t", "1"])
    );
    assert_eq!(v["result"]["verification"]["samples_passed"], 100);
    assert_eq!(v["conditions"]["all_hold"], true);
}

#[test]
fn polynomial_string_round_trips() {
    let input = data("lci_base_point.json");
    let out = bihom(&["implicitize", "--input", path(&input), "--json"], &[]);
    let text = json(&out)["result"]["polynomial"]
        .as_str()
        .unwrap()
        .to_string();
    let parsed = XPoly::parse(&text).unwrap();
    assert_eq!(parsed.to_string(), text);
    let check = bihom(
        &["verify", "--input", path(&input), "--polynomial", &text],
        &[],
    );
    assert_eq!(
        check.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&check.stdout)
    );
}

#[test]
fn wrong_polynomial_exits_1() {
    let input = data("lci_base_point.json");
    let out = bihom(
        &[
            "verify",
            "--input",
            path(&input),
            "--json",
            "--polynomial",
            "x0*x3 - x1*x2",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "verification_failure");
}

#[test]
fn condition_failure_exits_1() {
    let f = job(r#"{"m": 1, "n": 1, "a": ["s*t", "2*s*t", "u*t", "u*v"]}"#);
    let out = bihom(&["implicitize", "--input", path(f.path()), "--json"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "condition_failure");
    assert_eq!(v["conditions"]["route"], "refused");
    assert!(v.get("result").is_none());
}

#[test]
fn input_errors_exit_2() {
    let malformed = data("malformed.json");
    assert_eq!(
        bihom(&["check", "--input", path(&malformed)], &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bihom(&["check", "--input", "/nonexistent.json"], &[])
            .status
            .code(),
        Some(2)
    );
    let unknown = job(r#"{"m": 1, "n": 1, "a": ["s*t", "s*v", "u*t", "u*v"], "extra": 1}"#);
    assert_eq!(
        bihom(&["check", "--input", path(unknown.path())], &[])
            .status
            .code(),
        Some(2)
    );
    let three = job(r#"{"m": 1, "n": 1, "a": ["s*t", "s*v", "u*t"]}"#);
    assert_eq!(
        bihom(&["check", "--input", path(three.path())], &[])
            .status
            .code(),
        Some(2)
    );
    let wrong_degree = job(r#"{"m": 1, "n": 1, "a": ["s^2*t", "s*v", "u*t", "u*v"]}"#);
    assert_eq!(
        bihom(&["check", "--input", path(wrong_degree.path())], &[])
            .status
            .code(),
        Some(2)
    );
    let segre = data("segre.json");
    let no_poly = bihom(&["verify", "--input", path(&segre)], &[]);
    assert_eq!(no_poly.status.code(), Some(2));
}

#[test]
fn both_backends_agree() {
    let input = data("segre.json");
    let out = bihom(
        &[
            "implicitize",
            "--input",
            path(&input),
            "--json",
            "--det-backend",
            "both",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["backend"], "both");
    assert_eq!(v["result"]["backends_agree"], true);
    assert_eq!(v["result"]["polynomial"], "x0*x3 - x1*x2");
}

#[test]
fn reports_are_reproducible() {
    let input = data("regularity_2x3.json");
    let args = [
        "implicitize",
        "--input",
        path(&input),
        "--json",
        "--seed",
        "3",
    ];
    let (a, b) = (bihom(&args, &[]), bihom(&args, &[]));
    assert_eq!(without_timings(&a.stdout), without_timings(&b.stdout));
    let v = json(&a);
    assert!(v["timings"]["implicitize"].is_number());
    assert!(v["result"]["coordinate_change"].is_object());
    assert!(v["result"]["polynomial_original_coordinates"].is_string());
}

#[test]
fn environment_overrides() {
    let input = data("segre.json");
    let out = bihom(
        &["check", "--json"],
        &[
            ("BIHOM_INPUT", path(&input)),
            ("BIHOM_SEED", "11"),
            ("BIHOM_DET_BACKEND", "interp"),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["config"]["det_backend"], "interp");
    // Flags win over the environment.
    let out = bihom(
        &["check", "--json", "--seed", "4"],
        &[("BIHOM_INPUT", path(&input)), ("BIHOM_SEED", "11")],
    );
    assert_eq!(json(&out)["config"]["seed"], 4);
}

#[test]
fn seed_from_the_job_file() {
    let f = job(r#"{"m": 1, "n": 1, "a": ["s*t", "s*v", "u*t", "u*v"], "seed": 9}"#);
    let v = json(&bihom(&["check", "--input", path(f.path()), "--json"], &[]));
    assert_eq!(v["config"]["seed"], 9);
    let v = json(&bihom(
        &["check", "--input", path(f.path()), "--json", "--seed", "2"],
        &[],
    ));
    assert_eq!(v["config"]["seed"], 2);
}

#[test]
fn output_file_and_text_report() {
    let input = data("lci_base_point.json");
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.txt");
    let out = bihom(
        &["check", "--input", path(&input), "--output", path(&target)],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.contains("k = 1"));
    assert!(text.contains("status: Ok"));
    assert!(text.lines().any(|l| l.starts_with("B6 ok")));
}

#[test]
fn hilbert_table() {
    let input = data("regularity_2x3.json");
    let out = bihom(
        &[
            "hilbert",
            "--input",
            path(&input),
            "--json",
            "--from",
            "3,5",
            "--to",
            "4,6",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hilbert"]["rows"][0][0], 2);
    assert_eq!(v["hilbert"]["rows"].as_array().unwrap().len(), 2);
}
