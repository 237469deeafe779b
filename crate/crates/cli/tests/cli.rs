mod common;

use std::fs;

use common::{nlgauge, run_json, value, SCENARIOS};

#[test]
fn list_names_every_scenario() {
    let out = nlgauge(&["--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for id in SCENARIOS {
        assert!(text.lines().any(|l| l.starts_with(&format!("{id} "))), "{id} missing");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# solenoid run\nscenario = solenoid-AB\nparam.flux = 1.0\nformat = json\n").unwrap();
    let path = cfg.to_str().unwrap();

    let out = nlgauge(&["--config", path]);
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["metadata"]["params"]["flux"], 1.0);

    let out = nlgauge(&["--config", path, "--param", "flux=3"]);
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["metadata"]["params"]["flux"], 3.0);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.csv");
    let out = nlgauge(&["--scenario", "solenoid-AB", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("check_id,status,value,threshold,units,x,y,t\n"));
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 8));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["--scenario", "no-such-scenario"][..],
        &["--scenario", "disk-B", "--param", "radius"],
        &["--scenario", "disk-B", "--param", "bogus=1"],
        &["--scenario", "disk-B", "--grid", "x=1:0:5"],
        &["--scenario", "disk-B", "--grid", "z=0:1:5"],
        &["--scenario", "disk-B", "--format", "xml"],
        &["--scenario", "disk-B", "--tol-rel", "-1"],
        &["--scenario", "disk-B", "--fd-step", "0"],
        &[],
    ] {
        let out = nlgauge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn grid_override_moves_the_observation_window() {
    let (code, r) = run_json("horizontal-strip-B", &["--grid", "x=0.6:1.2:4"]);
    assert_eq!(code, 0);
    assert_eq!(r["metadata"]["grids"]["x"]["n"], 4);
    let worst_x = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["check_id"] == "lambda1_residual")
        .and_then(|row| row["x"].as_f64())
        .unwrap();
    assert!((0.6..=1.2).contains(&worst_x), "{worst_x}");
}

#[test]
fn speed_of_light_flag_reaches_the_constants() {
    let (code, r) = run_json("capacitor-xt", &["--c", "2.5"]);
    assert_eq!(code, 0);
    assert_eq!(r["metadata"]["constants"]["c"], 2.5);
    assert!(value(&r, "lambda3_nonlocal_equals_product").unwrap() < 1e-8);
}
