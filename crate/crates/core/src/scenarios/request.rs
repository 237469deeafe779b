//! Run requests assembled from a key=value config file and command-line flags.
//!
//! ```text
//! # comment
//! scenario = triangle-B
//! param.a = 1.5
//! grid.x = 0.5:1.5:5
//! tol_rel = 1e-10
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use super::{find_scenario, OutputFormat, RunError, ScenarioRun};
use crate::fields::{Constants, ScenarioConfig};
use crate::numerics::AxisRange;

/// A partially specified run; later layers override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunRequest {
    pub scenario: Option<String>,
    /// Parameter assignments in the order given.
    pub params: Vec<(String, String)>,
    pub grids: BTreeMap<String, AxisRange>,
    pub tol_abs: Option<f64>,
    pub tol_rel: Option<f64>,
    pub fd_step: Option<f64>,
    pub c: Option<f64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

/// Parses `lo:hi:n`.
pub fn parse_axis(text: &str) -> Result<AxisRange, RunError> {
    let bad = || RunError::Config(format!("grid range `{text}` must be lo:hi:n"));
    let parts: Vec<&str> = text.trim().split(':').collect();
    let [lo, hi, n] = parts.as_slice() else { return Err(bad()) };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    AxisRange::new(lo, hi, n).map_err(|e| RunError::Config(format!("grid range `{text}`: {e}")))
}

fn parse_number(key: &str, value: &str) -> Result<f64, RunError> {
    value
        .trim()
        .parse()
        .map_err(|_| RunError::Config(format!("`{key}`: cannot parse `{value}` as a number")))
}

/// Splits `key=value`.
pub(crate) fn split_assignment(text: &str) -> Result<(&str, &str), RunError> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| RunError::Config(format!("expected key=value, got `{text}`")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(RunError::Config(format!("missing key in `{text}`")));
    }
    Ok((k, v.trim()))
}

impl RunRequest {
    pub fn parse_config(text: &str) -> Result<Self, RunError> {
        let mut req = RunRequest::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: RunError| match e {
                RunError::Config(m) => RunError::Config(format!("line {}: {m}", lineno + 1)),
                other => other,
            };
            let (key, value) = split_assignment(line).map_err(at)?;
            req.set(key, value).map_err(at)?;
        }
        Ok(req)
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), RunError> {
        if let Some(name) = key.strip_prefix("param.") {
            self.params.push((name.to_string(), value.to_string()));
            return Ok(());
        }
        if let Some(axis) = key.strip_prefix("grid.") {
            self.grids.insert(axis.to_string(), parse_axis(value)?);
            return Ok(());
        }
        match key {
            "scenario" => self.scenario = Some(value.to_string()),
            "tol_abs" => self.tol_abs = Some(parse_number(key, value)?),
            "tol_rel" => self.tol_rel = Some(parse_number(key, value)?),
            "fd_step" => self.fd_step = Some(parse_number(key, value)?),
            "c" => self.c = Some(parse_number(key, value)?),
            "format" => self.format = Some(value.parse()?),
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(RunError::Config(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// `self` with every setting present in `over` replaced by it.
    pub fn overlay(mut self, over: RunRequest) -> Self {
        if over.scenario.is_some() {
            self.scenario = over.scenario;
        }
        self.params.extend(over.params);
        self.grids.extend(over.grids);
        self.tol_abs = over.tol_abs.or(self.tol_abs);
        self.tol_rel = over.tol_rel.or(self.tol_rel);
        self.fd_step = over.fd_step.or(self.fd_step);
        self.c = over.c.or(self.c);
        self.format = over.format.or(self.format);
        self.out = over.out.or(self.out);
        self
    }

    pub fn into_run(&self) -> Result<ScenarioRun, RunError> {
        let id = self
            .scenario
            .as_deref()
            .ok_or_else(|| RunError::Config("no scenario given".into()))?;
        let kind = find_scenario(id)?;
        let mut run = ScenarioRun::new(kind);
        let mut config = ScenarioConfig::new(kind);
        for (k, v) in &self.params {
            config.set_str(k, v)?;
        }
        run.config = config;
        run.grids = self.grids.clone();
        if let Some(v) = self.tol_abs {
            run.settings.tol_abs = v;
        }
        if let Some(v) = self.tol_rel {
            run.settings.tol_rel = v;
        }
        run.settings.fd_step = self.fd_step;
        if let Some(c) = self.c {
            run.constants = Constants::new(c, run.constants.q, run.constants.hbar)?;
        }
        run.validate()?;
        Ok(run)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::ScenarioKind;

    #[test]
    fn parses_config_text() {
        let text = "# run\nscenario = triangle-B\nparam.a = 2 # side\ngrid.x=0.5:1.5:7\ntol_rel=1e-10\n\n";
        let req = RunRequest::parse_config(text).unwrap();
        let run = req.into_run().unwrap();
        assert_eq!(run.scenario, ScenarioKind::TriangleB);
        assert_eq!(run.config.get("a"), 2.0);
        assert_eq!(run.grids["x"].n, 7);
        assert_eq!(run.settings.tol_rel, 1e-10);
    }

    #[test]
    fn flags_win() {
        let file = RunRequest::parse_config("scenario=disk-B\nparam.radius=2\nc=3").unwrap();
        let mut flags = RunRequest::default();
        flags.set("param.radius", "1.5").unwrap();
        flags.set("c", "2").unwrap();
        let run = file.overlay(flags).into_run().unwrap();
        assert_eq!(run.config.get("radius"), 1.5);
        assert_eq!(run.constants.c, 2.0);
    }

    #[test]
    fn errors_name_the_line() {
        let e = RunRequest::parse_config("scenario=disk-B\nbogus=1").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn negative_strip_width_is_a_config_error() {
        let mut r = RunRequest::default();
        r.set("scenario", "vertical-strip-B").unwrap();
        r.set("param.x_hi", "0.5").unwrap();
        assert!(matches!(r.into_run(), Err(RunError::Config(_))));
    }

    #[test]
    fn bad_grid_text() {
        assert!(parse_axis("1:2").is_err());
        assert!(parse_axis("1:2:x").is_err());
        assert_eq!(parse_axis(" 0 : 1 : 3 ").unwrap().n, 3);
    }
}
