//! Scenario registry, the check runner and report output.
//!
//! A [`ScenarioRun`] binds a catalog configuration to its solvers; running it
//! produces one [`CheckRow`] per property (residuals, cancellations, audits,
//! closed-form values). Reports serialize to CSV or JSON with rows sorted by
//! `check_id`, so identical runs give byte-identical output.

mod checks;
mod request;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{Constants, FieldError, ParamSpec, ScenarioConfig, ScenarioKind};
use crate::numerics::{AxisRange, FdSpec, QuadratureMethod, QuadratureSpec};

pub use request::{parse_axis, RunRequest};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// Process exit status: 2 for configuration errors, 3 for I/O errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Io(_) => 3,
        }
    }
}

impl From<FieldError> for RunError {
    fn from(e: FieldError) -> Self {
        RunError::Config(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioDescriptor {
    pub id: &'static str,
    pub kind: ScenarioKind,
    pub title: &'static str,
    /// The construction this scenario reproduces.
    pub reproduces: &'static str,
    pub solvers: &'static [&'static str],
    pub params: Vec<ParamSpec>,
}

/// Registry id of a kind; the van Kampen kind is registered as `van-kampen`.
pub fn registry_id(kind: ScenarioKind) -> &'static str {
    match kind {
        ScenarioKind::VanKampenFlux => "van-kampen",
        k => k.id(),
    }
}

pub fn list_scenarios() -> Vec<ScenarioDescriptor> {
    ScenarioKind::ALL
        .into_iter()
        .map(|kind| {
            let (title, reproduces, solvers): (_, _, &'static [&'static str]) = match kind {
                ScenarioKind::VerticalStripB => (
                    "extended vertical strip of B_z",
                    "static strip: no nonlocal term in the second solution, g = 0; time-dependent strip for the (x, y, t) solutions",
                    &["lambda1", "lambda2", "full1", "full2", "full4", "fin"],
                ),
                ScenarioKind::HorizontalStripB => (
                    "extended horizontal strip of B_z",
                    "static strip: h = 0 and g cancels the flux term of the first solution",
                    &["lambda1", "lambda2"],
                ),
                ScenarioKind::TriangleB => (
                    "equilateral triangle of B_z",
                    "equilateral-triangle flux with closed-form quadratic brackets g(x), h(y)",
                    &["lambda1", "lambda2"],
                ),
                ScenarioKind::DiskB => (
                    "uniform disk of B_z",
                    "disk flux in Cartesian and in polar coordinates",
                    &["lambda1", "lambda2", "lambda_polar1", "lambda_polar2"],
                ),
                ScenarioKind::SolenoidAB => (
                    "thin solenoid (Aharonov-Bohm)",
                    "multiplicities f(y0) = -Phi, hhat(x0) = +Phi and reduction to plain line integrals",
                    &["lambda1", "lambda2"],
                ),
                ScenarioKind::CapacitorXt => (
                    "one-dimensional capacitor",
                    "surviving spacetime nonlocal term in the first (x, t) solution; Brown-Holland negative control",
                    &["lambda3", "lambda4", "naive_brown_holland"],
                ),
                ScenarioKind::PulsedUniformEXt => (
                    "uniform electric pulse",
                    "bracket g(x) cancelling the electric flux after the pulse",
                    &["lambda3", "lambda4"],
                ),
                ScenarioKind::VanKampenFlux => (
                    "van Kampen time-dependent enclosed flux",
                    "phase difference of the t0-flux solutions equals Phi(t0) at all t",
                    &["full1", "full2", "full4", "fin", "van_kampen_delta"],
                ),
            };
            ScenarioDescriptor {
                id: registry_id(kind),
                kind,
                title,
                reproduces,
                solvers,
                params: kind.params(),
            }
        })
        .collect()
}

/// Looks up a registry id (kind ids are accepted as aliases).
pub fn find_scenario(id: &str) -> Result<ScenarioKind, RunError> {
    ScenarioKind::from_str(id).map_err(|_| {
        let known: Vec<&str> = ScenarioKind::ALL.into_iter().map(registry_id).collect();
        RunError::Config(format!("unknown scenario `{id}` (known: {})", known.join(", ")))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub tol_abs: f64,
    pub tol_rel: f64,
    /// Finite-difference step; `None` uses the default.
    pub fd_step: Option<f64>,
    pub method: QuadratureMethod,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            tol_abs: 1e-10,
            tol_rel: 1e-9,
            fd_step: None,
            method: QuadratureMethod::CompositeGaussLegendre,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRun {
    pub scenario: ScenarioKind,
    pub config: ScenarioConfig,
    pub settings: RunSettings,
    /// Overrides of the observation-window axes, keyed `x`, `y` or `t`.
    pub grids: BTreeMap<String, AxisRange>,
    pub constants: Constants,
}

impl ScenarioRun {
    pub fn new(scenario: ScenarioKind) -> Self {
        Self {
            scenario,
            config: ScenarioConfig::new(scenario),
            settings: RunSettings::default(),
            grids: BTreeMap::new(),
            constants: Constants::default(),
        }
    }

    pub fn quadrature(&self) -> Result<QuadratureSpec, RunError> {
        let q = QuadratureSpec::new(self.settings.method, self.settings.tol_abs, self.settings.tol_rel, 2000)
            .map_err(|e| RunError::Config(e.to_string()))?;
        Ok(q)
    }

    pub fn fd(&self) -> Result<FdSpec, RunError> {
        match self.settings.fd_step {
            None => Ok(FdSpec::default()),
            Some(h) => FdSpec::new(h).map_err(|e| RunError::Config(e.to_string())),
        }
    }

    /// Checks everything that can be checked before any computation.
    pub fn validate(&self) -> Result<(), RunError> {
        if self.config.kind != self.scenario {
            return Err(RunError::Config("configuration kind does not match scenario".into()));
        }
        self.config.validate()?;
        self.quadrature()?;
        self.fd()?;
        for (axis, r) in &self.grids {
            if !matches!(axis.as_str(), "x" | "y" | "t") {
                return Err(RunError::Config(format!("unknown grid axis `{axis}`")));
            }
            r.validate().map_err(|e| RunError::Config(format!("grid {axis}: {e}")))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check_id: String,
    pub status: Status,
    #[serde(with = "nullable_f64")]
    pub value: f64,
    #[serde(with = "nullable_f64")]
    pub threshold: f64,
    pub units: String,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub t: Option<f64>,
}

/// JSON has no NaN; non-finite values travel as `null`.
mod nullable_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_nan() {
            s.serialize_none()
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

impl CheckRow {
    fn make(id: &str, value: f64, threshold: f64, units: &str, pass: bool) -> Self {
        Self {
            check_id: id.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            value,
            threshold,
            units: units.to_string(),
            x: None,
            y: None,
            t: None,
        }
    }

    /// Passes when `value ≤ threshold`.
    pub fn at_most(id: &str, value: f64, threshold: f64, units: &str) -> Self {
        Self::make(id, value, threshold, units, value <= threshold)
    }

    /// Passes when `value ≥ threshold`.
    pub fn at_least(id: &str, value: f64, threshold: f64, units: &str) -> Self {
        Self::make(id, value, threshold, units, value >= threshold)
    }

    pub fn failed(id: &str) -> Self {
        Self::make(id, f64::NAN, f64::NAN, "", false)
    }

    pub fn at(mut self, x: Option<f64>, y: Option<f64>, t: Option<f64>) -> Self {
        self.x = x;
        self.y = y;
        self.t = t;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub scenario: String,
    pub params: BTreeMap<String, f64>,
    pub mollify_width: f64,
    pub residual_mollify_width: f64,
    pub residual_dressing: f64,
    pub constants: Constants,
    pub quadrature: QuadratureSpec,
    pub fd: FdSpec,
    pub grids: BTreeMap<String, AxisRange>,
    /// Errors met while evaluating checks; the affected rows fail.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub status: Status,
    pub rows: Vec<CheckRow>,
    pub metadata: Metadata,
}

impl RunReport {
    pub fn new(mut rows: Vec<CheckRow>, metadata: Metadata) -> Self {
        rows.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let status = if rows.iter().all(CheckRow::passed) { Status::Pass } else { Status::Fail };
        Self { status, rows, metadata }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn row(&self, id: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.check_id == id)
    }

    /// 0 when every row passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// Runs every check bound to the scenario.
pub fn run_scenario(run: &ScenarioRun) -> Result<RunReport, RunError> {
    run.validate()?;
    checks::run(run)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(RunError::Config(format!("unknown format `{other}` (csv or json)"))),
        }
    }
}

pub const CSV_HEADER: [&str; 8] = ["check_id", "status", "value", "threshold", "units", "x", "y", "t"];

fn number(v: f64) -> String {
    format!("{v:.16e}")
}

fn coord(v: Option<f64>) -> String {
    v.map(number).unwrap_or_default()
}

pub fn to_csv(report: &RunReport) -> Result<String, RunError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| RunError::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in &report.rows {
        w.write_record([
            r.check_id.clone(),
            r.status.to_string(),
            number(r.value),
            number(r.threshold),
            r.units.clone(),
            coord(r.x),
            coord(r.y),
            coord(r.t),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| RunError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json(report: &RunReport) -> Result<String, RunError> {
    let mut s = serde_json::to_string_pretty(report)
        .map_err(|e| RunError::Io(std::io::Error::other(e)))?;
    s.push('\n');
    Ok(s)
}

pub fn render(report: &RunReport, format: OutputFormat) -> Result<String, RunError> {
    match format {
        OutputFormat::Csv => to_csv(report),
        OutputFormat::Json => to_json(report),
    }
}

/// Writes the report to `destination`, or to standard output when `None`.
pub fn emit(report: &RunReport, format: OutputFormat, destination: Option<&Path>) -> Result<(), RunError> {
    let text = render(report, format)?;
    match destination {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
