use std::process::{Command, Output};

use serde_json::Value;

fn saw_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saw-lab"))
        .args(args)
        .env_remove("SAWLAB_NODE_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn count_reports_exact_values() {
    let out = saw_lab(&["count", "--n", "9"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["c_n"], "16268");
}

#[test]
fn closing_probability_as_csv() {
    let out = saw_lab(&["closing", "--n", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6") && text.contains("71"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(saw_lab(&["count", "--n", "100"]).status.code(), Some(3));
    assert_eq!(saw_lab(&["bogus"]).status.code(), Some(2));
    assert_eq!(saw_lab(&["closing", "--n", "4"]).status.code(), Some(2));
    let starved = Command::new(env!("CARGO_BIN_EXE_saw-lab"))
        .args(["count", "--n", "12"])
        .env("SAWLAB_NODE_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(starved.status.code(), Some(3));
}

#[test]
fn verify_suite_passes() {
    let out = saw_lab(&["verify", "--suite", "counting", "--nmax", "7"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn output_file_and_seeded_draws_repeat() {
    let dir = std::env::temp_dir().join(format!("saw-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("draw.json");
    let args = ["resample", "--kind", "draw", "--fixture", "four-slot", "--seed", "7", "--samples", "3"];
    let with_out: Vec<&str> = args.iter().copied().chain(["--out", path.to_str().unwrap()]).collect();
    assert!(saw_lab(&with_out).status.success());
    let written = std::fs::read(&path).unwrap();
    let again = saw_lab(&args);
    assert_eq!(String::from_utf8_lossy(&written).trim(), String::from_utf8_lossy(&again.stdout).trim());
    std::fs::remove_dir_all(dir).unwrap();
}
