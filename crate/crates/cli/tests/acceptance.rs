//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line
//! per sub-check and asserts on the whole.

mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{nlgauge, passed, rows, run_json, value, SCENARIOS};
use nlgauge::numerics::{
    central_diff, integrate_1d, line_integral, FdSpec, QuadratureMethod, QuadratureSpec,
};
use nlgauge::scenarios::{run_scenario, to_csv, to_json, RunReport, RunRequest};
use serde_json::Value;

struct Run {
    code: i32,
    report: Value,
    elapsed: Duration,
}

/// Every scenario at default parameters, run once and shared.
fn defaults() -> &'static BTreeMap<&'static str, Run> {
    static RUNS: OnceLock<BTreeMap<&'static str, Run>> = OnceLock::new();
    RUNS.get_or_init(|| {
        std::thread::scope(|s| {
            let handles: Vec<_> = SCENARIOS
                .iter()
                .map(|&id| {
                    s.spawn(move || {
                        let start = Instant::now();
                        let (code, report) = run_json(id, &[]);
                        (id, Run { code, report, elapsed: start.elapsed() })
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    })
}

struct Checklist {
    criterion: u32,
    failures: Vec<String>,
}

impl Checklist {
    fn new(criterion: u32) -> Self {
        Self { criterion, failures: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        let what = what.into();
        println!("criterion {} {}: {what}", self.criterion, if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures.push(what);
        }
    }

    fn at_most(&mut self, what: &str, v: Option<f64>, limit: f64) {
        let ok = v.is_some_and(|v| v <= limit);
        self.check(format!("{what} = {} <= {limit:e}", show(v)), ok);
    }

    fn at_least(&mut self, what: &str, v: Option<f64>, limit: f64) {
        let ok = v.is_some_and(|v| v >= limit);
        self.check(format!("{what} = {} >= {limit:e}", show(v)), ok);
    }

    fn finish(self) {
        assert!(self.failures.is_empty(), "criterion {} failed: {:#?}", self.criterion, self.failures);
    }
}

fn show(v: Option<f64>) -> String {
    v.map_or("missing".into(), |v| format!("{v:.3e}"))
}

fn report(id: &str) -> &'static Value {
    &defaults()[id].report
}

#[test]
fn criterion_1_pde_satisfaction() {
    let mut c = Checklist::new(1);
    for id in SCENARIOS {
        let r = report(id);
        let solvers: Vec<String> = rows(r)
            .iter()
            .filter_map(|row| row["check_id"].as_str())
            .filter(|k| k.ends_with("_residual") && !k.starts_with("naive_brown_holland"))
            .map(|k| k.trim_end_matches("_residual").to_string())
            .collect();
        c.check(format!("{id}: residual sweeps present ({})", solvers.len()), !solvers.is_empty());
        for s in &solvers {
            c.at_most(&format!("{id}/{s} max relative residual"), value(r, &format!("{s}_residual")), 1e-5);
            c.at_least(&format!("{id}/{s} halving ratio"), value(r, &format!("{s}_residual_convergence")), 3.0);
            c.at_least(&format!("{id}/{s} grid coverage"), value(r, &format!("{s}_residual_coverage")), 1.0);
        }
        let width = r["metadata"]["residual_mollify_width"].as_f64();
        if !matches!(id, "solenoid-AB" | "van-kampen") {
            c.check(format!("{id}: residual field mollified (width {})", show(width)), width.is_some_and(|w| w > 0.0));
        }
    }
    c.finish();
}

#[test]
fn criterion_2_brown_holland_negative_control() {
    let mut c = Checklist::new(2);
    let r = report("capacitor-xt");
    c.at_least("naive form residual", value(r, "naive_brown_holland_residual"), 1e-2);
    for s in ["lambda3", "lambda3_temporal_gauge"] {
        c.at_most(&format!("{s} residual"), value(r, &format!("{s}_residual")), 1e-5);
        c.at_least(&format!("{s} halving ratio"), value(r, &format!("{s}_residual_convergence")), 3.0);
    }
    c.finish();
}

#[test]
fn criterion_3_path_order_cancellation() {
    let mut c = Checklist::new(3);
    let pairs = [
        ("vertical-strip-B", "lambda1_minus_lambda2"),
        ("horizontal-strip-B", "lambda1_minus_lambda2"),
        ("triangle-B", "lambda1_minus_lambda2"),
        ("disk-B", "lambda1_minus_lambda2"),
        ("capacitor-xt", "lambda3_minus_lambda4"),
        ("pulsed-uniform-E-xt", "lambda3_minus_lambda4"),
    ];
    for (id, key) in pairs {
        let r = report(id);
        c.at_most(&format!("{id}: max |difference|"), value(r, key), 2e-9);
        c.at_most(&format!("{id}: |fitted K|"), value(r, &format!("{key}_constant")), 2e-9);
    }
    c.finish();
}

#[test]
fn criterion_4_triangle_closed_forms() {
    let mut c = Checklist::new(4);
    let r = report("triangle-B");
    let p = &r["metadata"]["params"];
    let (b0, a) = (p["b0"].as_f64().unwrap(), p["a"].as_f64().unwrap());
    let scale = b0.abs() * a * a;
    c.at_most("g(x) against printed form", value(r, "triangle_g_closed_form"), 1e-6 * scale);
    c.at_most("h(y) against printed form", value(r, "triangle_h_closed_form"), 1e-6 * scale);
    c.at_most("g'' relative error", value(r, "triangle_g_second_derivative"), 1e-4);
    c.at_most("h'' relative error", value(r, "triangle_h_second_derivative"), 1e-4);
    c.check("placement resolved uniquely", passed(r, "triangle_placement_matches") && passed(r, "triangle_placement_best_offset"));
    c.finish();
}

#[test]
fn criterion_5_aharonov_bohm_multiplicities() {
    let mut c = Checklist::new(5);
    let r = report("solenoid-AB");
    let flux = r["metadata"]["params"]["flux"].as_f64().unwrap();
    c.check(format!("default flux is 2 pi ({flux})"), (flux - std::f64::consts::TAU).abs() < 1e-15);
    for key in [
        "f_y0_equals_minus_phi",
        "hhat_x0_equals_phi",
        "ab_lambda1_minus_lambda2",
        "ab_lambda1_minus_lambda2_constant",
        "lambda1_nonlocal_plus_multiplicity",
        "lambda2_nonlocal_plus_multiplicity",
    ] {
        c.at_most(key, value(r, key), 1e-8);
    }
    c.finish();
}

#[test]
fn criterion_6_van_kampen_causality() {
    let mut c = Checklist::new(6);
    for (profile, name) in [("0", "constant"), ("1", "linear"), ("2", "sinusoidal")] {
        let arg = format!("profile={profile}");
        let (code, r) = run_json("van-kampen", &["--param", &arg, "--param", "t0=0.4"]);
        c.check(format!("{name}: exit status {code}"), code == 0);
        c.at_most(&format!("{name}: |delta - phi(t0)| over 7 times"), value(&r, "delta_lambda_equals_phi_t0"), 1e-6);
        c.at_most(&format!("{name}: spread over t"), value(&r, "delta_lambda_t_spread"), 1e-6);
        c.at_most(&format!("{name}: constant pure-gauge shift"), value(&r, "delta_lambda_gauge_shift"), 1e-9);
    }
    c.finish();
}

#[test]
fn criterion_7_numerics_infrastructure() {
    let mut c = Checklist::new(7);
    let simpson = QuadratureSpec::default();
    for spec in [simpson, simpson.with_method(QuadratureMethod::CompositeGaussLegendre)] {
        let m = format!("{:?}", spec.method);
        let cubic = integrate_1d(|x| 1.0 - 2.0 * x + 3.0 * x * x * x, -0.5, 1.5, &spec).ok();
        let exact: f64 = 1.0 * 2.0 - (1.5f64.powi(2) - 0.25) + 0.75 * (1.5f64.powi(4) - 0.0625);
        c.at_most(&format!("{m}: cubic exactness error"), cubic.map(|v| (v - exact).abs()), 1e-12);
        let f = |x: f64| (3.0 * x).cos() * x;
        let whole = integrate_1d(f, 0.0, 2.0, &spec).unwrap();
        let parts = integrate_1d(f, 0.0, 0.7, &spec).unwrap() + integrate_1d(f, 0.7, 2.0, &spec).unwrap();
        c.at_most(&format!("{m}: interval additivity"), Some((whole - parts).abs()), 3.0 * spec.tolerance(whole));
        let grad = |x: f64, y: f64| [2.0 * x * y + y.cos(), x * x - x * y.sin()];
        let square = [[0.2, -0.4], [1.3, -0.4], [1.3, 0.9], [0.2, 0.9], [0.2, -0.4]];
        c.at_most(&format!("{m}: closed loop of a gradient"), line_integral(grad, &square, &spec).ok().map(f64::abs), 1e-9);
    }
    let fd = FdSpec::new(1e-2).unwrap();
    let f = |p: &[f64]| p[0].exp().sin();
    let exact = 0.3f64.exp() * 0.3f64.exp().cos();
    let e1 = (central_diff(f, &[0.3], 0, &fd) - exact).abs();
    let e2 = (central_diff(f, &[0.3], 0, &fd.halved()) - exact).abs();
    c.check(format!("central difference halving ratio {:.3}", e1 / e2), (e1 / e2 - 4.0).abs() < 0.1);
    c.finish();
}

#[test]
fn criterion_8_cli_contract() {
    let mut c = Checklist::new(8);
    for (id, run) in defaults() {
        c.check(format!("{id}: defaults exit 0 (got {})", run.code), run.code == 0);
        c.check(format!("{id}: finishes in {:.1} s", run.elapsed.as_secs_f64()), run.elapsed < Duration::from_secs(60));
    }
    let strip = report("vertical-strip-B");
    c.check("vertical-strip-B: every row passes", rows(strip).iter().all(|r| r["status"] == "pass"));
    c.at_most("vertical-strip-B: lambda1_minus_lambda2", value(strip, "lambda1_minus_lambda2"), 2e-9);

    let (code, vk) = run_json("van-kampen", &["--param", "profile=1"]);
    c.check("van-kampen linear: exit 0", code == 0);
    c.check("van-kampen linear: delta row passes", passed(&vk, "delta_lambda_equals_phi_t0"));
    c.at_most("van-kampen linear: delta deviation", value(&vk, "delta_lambda_equals_phi_t0"), 1e-6);

    let bad = nlgauge(&["--scenario", "vertical-strip-B", "--param", "x_hi=0.5"]);
    c.check("negative strip width: exit 2", bad.status.code() == Some(2));
    c.check("negative strip width: no rows emitted", bad.stdout.is_empty());

    // Emit contract on a library-side report.
    let mut req = RunRequest::default();
    req.set("scenario", "solenoid-AB").unwrap();
    let full = run_scenario(&req.into_run().unwrap()).unwrap();
    let csv = to_csv(&full).unwrap();
    c.check("CSV line count = rows + 1", csv.lines().count() == full.rows.len() + 1);
    let back: RunReport = serde_json::from_str(&to_json(&full).unwrap()).unwrap();
    c.check("JSON round-trip reproduces rows", back.rows == full.rows);
    let empty = RunReport::new(Vec::new(), full.metadata.clone());
    c.check("empty report is header-only CSV", to_csv(&empty).unwrap() == "check_id,status,value,threshold,units,x,y,t\n");

    let once = nlgauge(&["--scenario", "triangle-B"]).stdout;
    let twice = nlgauge(&["--scenario", "triangle-B"]).stdout;
    c.check("identical runs give byte-identical CSV", !once.is_empty() && once == twice);

    let fail = nlgauge(&["--scenario", "vertical-strip-B", "--fd-step", "0.5"]);
    c.check("failing checks: exit 1", fail.status.code() == Some(1));
    let io = nlgauge(&["--scenario", "solenoid-AB", "--out", "/nonexistent-dir/report.csv"]);
    c.check("unwritable destination: exit 3", io.status.code() == Some(3));
    c.finish();
}
