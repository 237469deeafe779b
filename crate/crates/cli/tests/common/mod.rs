#![allow(dead_code)]

use std::process::{Command, Output};

use serde_json::Value;

pub fn nlgauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlgauge")).args(args).output().expect("spawn nlgauge")
}

/// Runs a scenario with JSON output; returns the exit code and parsed report.
pub fn run_json(scenario: &str, extra: &[&str]) -> (i32, Value) {
    let mut args = vec!["--scenario", scenario, "--format", "json"];
    args.extend_from_slice(extra);
    let out = nlgauge(&args);
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{scenario}: bad json ({e}): {}", String::from_utf8_lossy(&out.stderr)));
    (code, report)
}

pub fn rows(report: &Value) -> &Vec<Value> {
    report["rows"].as_array().expect("rows")
}

pub fn row<'a>(report: &'a Value, id: &str) -> Option<&'a Value> {
    rows(report).iter().find(|r| r["check_id"] == id)
}

/// Measured value; `None` for a missing row or a null (failed) value.
pub fn value(report: &Value, id: &str) -> Option<f64> {
    row(report, id).and_then(|r| r["value"].as_f64())
}

pub fn passed(report: &Value, id: &str) -> bool {
    row(report, id).is_some_and(|r| r["status"] == "pass")
}

pub const SCENARIOS: [&str; 8] = [
    "vertical-strip-B",
    "horizontal-strip-B",
    "triangle-B",
    "disk-B",
    "solenoid-AB",
    "capacitor-xt",
    "pulsed-uniform-E-xt",
    "van-kampen",
];
