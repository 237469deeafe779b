use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nlgauge::scenarios::{
    emit, list_scenarios, parse_axis, run_scenario, OutputFormat, RunError, RunRequest,
};

/// Evaluate nonlocal gauge functions for a catalog scenario and report checks.
#[derive(Debug, Parser)]
#[command(name = "nlgauge", version)]
struct Cli {
    /// Scenario id (see --list).
    #[arg(long)]
    scenario: Option<String>,
    /// Scenario parameter, key=value. Repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Observation grid override, axis=lo:hi:n. Repeatable.
    #[arg(long = "grid", value_name = "AXIS=LO:HI:N")]
    grids: Vec<String>,
    #[arg(long)]
    tol_abs: Option<f64>,
    #[arg(long)]
    tol_rel: Option<f64>,
    /// Central-difference step for residual checks.
    #[arg(long)]
    fd_step: Option<f64>,
    /// Speed of light.
    #[arg(long)]
    c: Option<f64>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file; flags override its settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// List registered scenarios and exit.
    #[arg(long)]
    list: bool,
}

impl Cli {
    fn request(&self) -> Result<RunRequest, RunError> {
        let mut req = RunRequest {
            scenario: self.scenario.clone(),
            tol_abs: self.tol_abs,
            tol_rel: self.tol_rel,
            fd_step: self.fd_step,
            c: self.c,
            out: self.out.clone(),
            ..RunRequest::default()
        };
        for p in &self.params {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| RunError::Config(format!("--param expects key=value, got `{p}`")))?;
            req.params.push((k.trim().to_string(), v.trim().to_string()));
        }
        for g in &self.grids {
            let (axis, range) = g
                .split_once('=')
                .ok_or_else(|| RunError::Config(format!("--grid expects axis=lo:hi:n, got `{g}`")))?;
            req.grids.insert(axis.trim().to_string(), parse_axis(range)?);
        }
        if let Some(f) = &self.format {
            req.format = Some(f.parse()?);
        }
        Ok(req)
    }
}

fn print_list() {
    let mut text = String::new();
    for d in list_scenarios() {
        text += &format!("{}  {}\n", d.id, d.title);
        text += &format!("    reproduces: {}\n", d.reproduces);
        text += &format!("    solvers: {}\n", d.solvers.join(", "));
        for p in &d.params {
            text += &format!("    {} = {}  ({})\n", p.name, p.default, p.description);
        }
    }
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn execute(cli: &Cli) -> Result<i32, RunError> {
    let flags = cli.request()?;
    let req = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                RunError::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            RunRequest::parse_config(&text)?.overlay(flags)
        }
        None => flags,
    };
    let run = req.into_run()?;
    let report = run_scenario(&run)?;
    let format = req.format.unwrap_or(OutputFormat::Csv);
    emit(&report, format, req.out.as_deref())?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        print_list();
        return ExitCode::SUCCESS;
    }
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("nlgauge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
