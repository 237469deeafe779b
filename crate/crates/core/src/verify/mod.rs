//! Grid checkers: PDE residuals of candidate gauge functions and cancellation
//! of solution pairs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fields::FieldDifference;
use crate::gauge_static::GaugeError;
use crate::numerics::{try_central_diff, FdSpec, GridSpec};
use crate::plane::midrange;

/// Which grid points take part in a residual sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualOptions {
    /// Points closer than this to a field-region edge are skipped.
    pub margin: f64,
    pub include_edges: bool,
}

impl ResidualOptions {
    /// Skips points within `2·mollify_width` of an edge.
    pub fn for_mollify_width(width: f64) -> Self {
        Self { margin: 2.0 * width, include_edges: false }
    }

    pub fn all_points() -> Self {
        Self { margin: 0.0, include_edges: true }
    }
}

impl Default for ResidualOptions {
    fn default() -> Self {
        Self::all_points()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationResidual {
    pub equation: String,
    pub max_abs: f64,
    pub max_rel: f64,
    pub worst_point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedPoint {
    pub point: Vec<f64>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equations: Vec<EquationResidual>,
    pub grid: GridSpec,
    pub fd_step: f64,
    pub evaluated: usize,
    pub excluded: usize,
    pub flagged: Vec<FlaggedPoint>,
}

impl ResidualReport {
    pub fn max_abs(&self) -> f64 {
        self.equations.iter().map(|e| e.max_abs).fold(0.0, f64::max)
    }

    pub fn max_rel(&self) -> f64 {
        self.equations.iter().map(|e| e.max_rel).fold(0.0, f64::max)
    }

    /// Worst point of the equation with the largest absolute residual.
    pub fn worst_point(&self) -> Option<&[f64]> {
        self.equations
            .iter()
            .max_by(|a, b| a.max_abs.total_cmp(&b.max_abs))
            .map(|e| e.worst_point.as_slice())
    }
}

type Target<'a> = Box<dyn Fn(&[f64]) -> f64 + Sync + 'a>;

/// One equation `scale · ∂Λ/∂(axis) = target(p)`.
struct Equation<'a> {
    name: &'static str,
    axis: usize,
    scale: f64,
    target: Target<'a>,
}

fn sweep<L>(
    lambda: &L,
    equations: &[Equation<'_>],
    keep: &(dyn Fn(&[f64]) -> bool + Sync),
    grid: &GridSpec,
    fd: &FdSpec,
) -> ResidualReport
where
    L: Fn(&[f64]) -> Result<f64, GaugeError> + Sync,
{
    let points = grid.points();
    let kept: Vec<Vec<f64>> = points.iter().filter(|p| keep(p)).cloned().collect();
    let excluded = points.len() - kept.len();
    type Row = Result<Vec<(f64, f64)>, FlaggedPoint>;
    let rows: Vec<(Vec<f64>, Row)> = kept
        .into_par_iter()
        .map(|p| {
            let row = equations
                .iter()
                .map(|eq| {
                    let d = try_central_diff(lambda, &p, eq.axis, fd)?;
                    let target = (eq.target)(&p);
                    Ok(((eq.scale * d - target).abs(), target.abs()))
                })
                .collect::<Result<Vec<_>, GaugeError>>()
                .map_err(|e| FlaggedPoint { point: p.clone(), error: e.to_string() });
            (p, row)
        })
        .collect();
    let mut flagged = Vec::new();
    let mut good = Vec::new();
    for (p, row) in rows {
        match row {
            Ok(r) => good.push((p, r)),
            Err(f) => flagged.push(f),
        }
    }
    let mut out = Vec::with_capacity(equations.len());
    for (k, eq) in equations.iter().enumerate() {
        let global = good.iter().map(|(_, r)| r[k].1).fold(0.0, f64::max);
        let mut rep = EquationResidual {
            equation: eq.name.to_string(),
            max_abs: 0.0,
            max_rel: 0.0,
            worst_point: good.first().map(|(p, _)| p.clone()).unwrap_or_default(),
        };
        for (p, r) in &good {
            let (res, local) = r[k];
            let rel = res / local.max(1e-3 * global).max(1e-12);
            if res > rep.max_abs {
                rep.max_abs = res;
                rep.worst_point = p.clone();
            }
            rep.max_rel = rep.max_rel.max(rel);
        }
        out.push(rep);
    }
    ResidualReport {
        equations: out,
        grid: grid.clone(),
        fd_step: fd.step,
        evaluated: good.len(),
        excluded,
        flagged,
    }
}

fn check_dim(grid: &GridSpec, dim: usize) -> Result<(), GaugeError> {
    if grid.dim() != dim {
        return Err(GaugeError::InvalidWindow(format!(
            "residual grid needs {dim} axes, got {}",
            grid.dim()
        )));
    }
    Ok(())
}

fn keeps<'a>(
    field: &'a FieldDifference,
    opts: ResidualOptions,
    to_xyt: impl Fn(&[f64]) -> [f64; 3] + Sync + 'a,
) -> impl Fn(&[f64]) -> bool + Sync + 'a {
    move |p| {
        if opts.include_edges || opts.margin <= 0.0 {
            return true;
        }
        let [x, y, t] = to_xyt(p);
        field.edge_distance(x, y, t) >= opts.margin
    }
}

/// Residuals of `∂Λ/∂x = A_x`, `∂Λ/∂y = A_y` at time `t` over an (x, y) grid.
pub fn residual_static<L>(
    lambda: L,
    field: &FieldDifference,
    t: f64,
    grid: &GridSpec,
    fd: &FdSpec,
    opts: ResidualOptions,
) -> Result<ResidualReport, GaugeError>
where
    L: Fn(f64, f64) -> Result<f64, GaugeError> + Sync,
{
    check_dim(grid, 2)?;
    let eqs = [
        Equation {
            name: "d_dx_equals_a_x",
            axis: 0,
            scale: 1.0,
            target: Box::new(|p: &[f64]| field.a_x(p[0], p[1], t)),
        },
        Equation {
            name: "d_dy_equals_a_y",
            axis: 1,
            scale: 1.0,
            target: Box::new(|p: &[f64]| field.a_y(p[0], p[1], t)),
        },
    ];
    let keep = keeps(field, opts, move |p| [p[0], p[1], t]);
    Ok(sweep(&|p: &[f64]| lambda(p[0], p[1]), &eqs, &keep, grid, fd))
}

/// Residuals of `∂Λ/∂x = A_x`, `−(1/c) ∂Λ/∂t = φ` at fixed `y` over an (x, t) grid.
pub fn residual_xt<L>(
    lambda: L,
    field: &FieldDifference,
    y: f64,
    grid: &GridSpec,
    fd: &FdSpec,
    opts: ResidualOptions,
) -> Result<ResidualReport, GaugeError>
where
    L: Fn(f64, f64) -> Result<f64, GaugeError> + Sync,
{
    check_dim(grid, 2)?;
    let eqs = [
        Equation {
            name: "d_dx_equals_a_x",
            axis: 0,
            scale: 1.0,
            target: Box::new(|p: &[f64]| field.a_x(p[0], y, p[1])),
        },
        Equation {
            name: "minus_d_dt_over_c_equals_phi",
            axis: 1,
            scale: -1.0 / field.c(),
            target: Box::new(|p: &[f64]| field.phi(p[0], y, p[1])),
        },
    ];
    let keep = keeps(field, opts, move |p| [p[0], y, p[1]]);
    Ok(sweep(&|p: &[f64]| lambda(p[0], p[1]), &eqs, &keep, grid, fd))
}

/// Residuals of the three equations over an (x, y, t) grid.
pub fn residual_full<L>(
    lambda: L,
    field: &FieldDifference,
    grid: &GridSpec,
    fd: &FdSpec,
    opts: ResidualOptions,
) -> Result<ResidualReport, GaugeError>
where
    L: Fn(f64, f64, f64) -> Result<f64, GaugeError> + Sync,
{
    check_dim(grid, 3)?;
    let eqs = [
        Equation {
            name: "d_dx_equals_a_x",
            axis: 0,
            scale: 1.0,
            target: Box::new(|p: &[f64]| field.a_x(p[0], p[1], p[2])),
        },
        Equation {
            name: "d_dy_equals_a_y",
            axis: 1,
            scale: 1.0,
            target: Box::new(|p: &[f64]| field.a_y(p[0], p[1], p[2])),
        },
        Equation {
            name: "minus_d_dt_over_c_equals_phi",
            axis: 2,
            scale: -1.0 / field.c(),
            target: Box::new(|p: &[f64]| field.phi(p[0], p[1], p[2])),
        },
    ];
    let keep = keeps(field, opts, |p| [p[0], p[1], p[2]]);
    Ok(sweep(&|p: &[f64]| lambda(p[0], p[1], p[2]), &eqs, &keep, grid, fd))
}

/// What the difference of two solutions is supposed to be.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Expected {
    /// Equal up to a fitted constant, which must itself vanish.
    Zero,
    /// Equal up to a fitted constant, which must match this value (an enclosed flux).
    Constant(f64),
}

impl Expected {
    pub fn value(self) -> f64 {
        match self {
            Expected::Zero => 0.0,
            Expected::Constant(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CancellationReport {
    /// `max |Λ_a − Λ_b − K|` over the grid.
    pub max_deviation: f64,
    /// `max |Λ_a − Λ_b − expected|` over the grid.
    pub max_error: f64,
    pub fitted_k: f64,
    pub expected: Expected,
    pub tolerance: f64,
    pub passed: bool,
    pub grid: GridSpec,
}

/// Fits one constant `K` to `Λ_a − Λ_b` over `grid` and compares it with `expected`.
pub fn check_cancellation<A, B>(
    lambda_a: A,
    lambda_b: B,
    grid: &GridSpec,
    expected: Expected,
    tolerance: f64,
) -> Result<CancellationReport, GaugeError>
where
    A: Fn(&[f64]) -> Result<f64, GaugeError> + Sync,
    B: Fn(&[f64]) -> Result<f64, GaugeError> + Sync,
{
    let diffs = grid
        .points()
        .into_par_iter()
        .map(|p| Ok(lambda_a(&p)? - lambda_b(&p)?))
        .collect::<Result<Vec<f64>, GaugeError>>()?;
    let (fitted_k, max_deviation) = midrange(&diffs);
    let max_error = diffs.iter().fold(0.0_f64, |m, d| m.max((d - expected.value()).abs()));
    let passed = max_deviation <= tolerance && (fitted_k - expected.value()).abs() <= tolerance;
    Ok(CancellationReport {
        max_deviation,
        max_error,
        fitted_k,
        expected,
        tolerance,
        passed,
        grid: grid.clone(),
    })
}

/// `coarse / fine` max residual; second-order schemes give about 4 when the
/// step is halved.
pub fn convergence_ratio(coarse: &ResidualReport, fine: &ResidualReport) -> f64 {
    let f = fine.max_abs();
    if f == 0.0 {
        return if coarse.max_abs() == 0.0 { 1.0 } else { f64::INFINITY };
    }
    coarse.max_abs() / f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Constants, CustomField, Potentials};
    use crate::numerics::AxisRange;

    fn grid2() -> GridSpec {
        GridSpec::new(vec![AxisRange::new(0.1, 1.0, 4).unwrap(), AxisRange::new(0.2, 0.9, 3).unwrap()])
            .unwrap()
    }

    fn constant_a() -> FieldDifference {
        CustomField::new(|_, _, _| Potentials { ax: 0.3, ay: -0.7, phi: 0.0 })
            .into_field(Constants::default())
    }

    #[test]
    fn exact_antiderivative_has_tiny_residual() {
        let f = constant_a();
        let r = residual_static(
            |x, y| Ok(0.3 * x - 0.7 * y),
            &f,
            0.0,
            &grid2(),
            &FdSpec::default(),
            ResidualOptions::default(),
        )
        .unwrap();
        assert!(r.max_abs() <= 1e-10, "{r:?}");
        assert_eq!(r.evaluated, 12);
    }

    #[test]
    fn zero_candidate_residual_is_max_a() {
        let f = constant_a();
        let r = residual_static(
            |_, _| Ok(0.0),
            &f,
            0.0,
            &grid2(),
            &FdSpec::default(),
            ResidualOptions::default(),
        )
        .unwrap();
        assert_eq!(r.max_abs(), 0.7);
        assert_eq!(r.equations[0].max_abs, 0.3);
    }

    #[test]
    fn failures_are_flagged_not_fatal() {
        let f = constant_a();
        let r = residual_static(
            |x, _| {
                if x > 0.95 {
                    Err(GaugeError::Degenerate("boom".into()))
                } else {
                    Ok(0.0)
                }
            },
            &f,
            0.0,
            &grid2(),
            &FdSpec::default(),
            ResidualOptions::default(),
        )
        .unwrap();
        assert_eq!(r.flagged.len(), 3);
        assert_eq!(r.evaluated, 9);
    }

    #[test]
    fn cancellation_swaps_sign_of_k() {
        let g = grid2();
        let a = |p: &[f64]| Ok(p[0] + 2.0);
        let b = |p: &[f64]| Ok(p[0]);
        let ab = check_cancellation(a, b, &g, Expected::Constant(2.0), 1e-12).unwrap();
        let ba = check_cancellation(b, a, &g, Expected::Constant(-2.0), 1e-12).unwrap();
        assert!(ab.passed && ba.passed);
        assert_eq!(ab.fitted_k, -ba.fitted_k);
        assert_eq!(ab.max_deviation, ba.max_deviation);
        let z = check_cancellation(a, b, &g, Expected::Zero, 1e-12).unwrap();
        assert!(!z.passed);
    }
}
