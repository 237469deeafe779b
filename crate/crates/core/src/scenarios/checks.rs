//! Per-scenario check bindings.

use std::f64::consts::PI;

use super::{CheckRow, Metadata, RunError, RunReport, ScenarioRun};
use crate::fields::{build_field, FieldDifference, ScenarioConfig, ScenarioKind};
use crate::gauge_spacetime::{
    audit_brackets_xt, audit_full, bracket_cross_identification_xt, full_multiplicities,
    lambda3, lambda4, lambda_full, naive_brown_holland, select_brackets_xt, select_brackets_xyt,
    spacetime_multiplicities, van_kampen_delta, BracketSetXYT, FullVariant,
    SpacetimeRect,
};
use crate::gauge_static::{
    ab_multiplicities, audit_brackets, bracket_cross_identification, enclosed_flux,
    enclosed_flux_polar, fit_triangle_placement, lambda1, lambda2, lambda_polar1, lambda_polar2,
    printed_g, printed_h, select_brackets, select_brackets_polar, triangle_window, BracketSet2D,
    GaugeError, ObservationRect, PolarPoint,
};
use crate::numerics::{AxisRange, FdSpec, GridSpec, QuadratureSpec};
use crate::plane::midrange;
use crate::verify::{
    check_cancellation, convergence_ratio, residual_full, residual_static, residual_xt, Expected,
    ResidualOptions, ResidualReport,
};

const RESIDUAL_TOL: f64 = 1e-5;
const CONVERGENCE_MIN: f64 = 3.0;
const DEFAULT_DRESSING: f64 = 0.5;
const AB_TOL: f64 = 1e-8;
const CLOSED_FORM_TOL: f64 = 1e-6;
const CURVATURE_TOL: f64 = 1e-4;
const VAN_KAMPEN_TOL: f64 = 1e-6;
const GAUGE_SHIFT_TOL: f64 = 1e-9;
const BROWN_HOLLAND_MIN: f64 = 1e-2;
const SQRT3: f64 = 1.732_050_807_568_877_2;

type Coords = (Option<f64>, Option<f64>, Option<f64>);

struct Ctx<'a> {
    run: &'a ScenarioRun,
    spec: QuadratureSpec,
    fd: FdSpec,
    /// Tolerance for differences of two solutions: twice the relative quadrature tolerance.
    cancel_tol: f64,
    residual_mollify: f64,
    residual_dressing: f64,
    rows: Vec<CheckRow>,
    errors: Vec<String>,
}

impl<'a> Ctx<'a> {
    fn cfg(&self) -> &ScenarioConfig {
        &self.run.config
    }

    fn p(&self, name: &str) -> f64 {
        self.run.config.get(name)
    }

    /// Field with sharp edges, as configured otherwise.
    fn exact(&self, cfg: &ScenarioConfig) -> Result<FieldDifference, RunError> {
        Ok(build_field(&cfg.clone().with_mollify(0.0), self.run.constants)?)
    }

    /// Mollified and gauge-dressed field for residual sweeps.
    fn residual(&self, cfg: &ScenarioConfig) -> Result<FieldDifference, RunError> {
        let mut c = cfg.clone().with_mollify(self.residual_mollify);
        c.set("dressing", self.residual_dressing)?;
        Ok(build_field(&c, self.run.constants)?)
    }

    fn axis(&self, name: &str, lo: f64, hi: f64, n: usize) -> AxisRange {
        self.run.grids.get(name).copied().unwrap_or(AxisRange { lo, hi, n })
    }

    /// Runs `f`; if it fails, every id in `ids` not yet reported gets a failing row.
    fn guarded(
        &mut self,
        ids: &[&str],
        f: impl FnOnce(&mut Vec<CheckRow>) -> Result<(), GaugeError>,
    ) {
        let mut local = Vec::new();
        if let Err(e) = f(&mut local) {
            self.errors.push(format!("{}: {e}", ids.join(", ")));
            for id in ids {
                if !local.iter().any(|r| r.check_id == *id) {
                    local.push(CheckRow::failed(id));
                }
            }
        }
        self.rows.extend(local);
    }
}

fn grid(axes: Vec<AxisRange>) -> Result<GridSpec, GaugeError> {
    Ok(GridSpec::new(axes)?)
}

fn with_n(r: AxisRange, n: usize, overridden: bool) -> AxisRange {
    if overridden {
        r
    } else {
        AxisRange { n, ..r }
    }
}

fn residual_ids(prefix: &str) -> [String; 3] {
    [
        format!("{prefix}_residual"),
        format!("{prefix}_residual_convergence"),
        format!("{prefix}_residual_coverage"),
    ]
}

/// Residual at the configured step, convergence under halving and coverage.
fn residual_rows(
    rows: &mut Vec<CheckRow>,
    prefix: &str,
    fd: FdSpec,
    coords: impl Fn(&[f64]) -> Coords,
    sweep: impl Fn(&FdSpec) -> Result<ResidualReport, GaugeError>,
) -> Result<(), GaugeError> {
    let [r_id, c_id, v_id] = residual_ids(prefix);
    let coarse = sweep(&fd)?;
    let fine = sweep(&fd.halved())?;
    let (x, y, t) = coarse.worst_point().map(&coords).unwrap_or((None, None, None));
    rows.push(CheckRow::at_most(&r_id, coarse.max_rel(), RESIDUAL_TOL, "relative").at(x, y, t));
    rows.push(CheckRow::at_least(&c_id, convergence_ratio(&coarse, &fine), CONVERGENCE_MIN, "ratio"));
    let total = coarse.grid.len().max(1) as f64;
    rows.push(CheckRow::at_least(&v_id, coarse.evaluated as f64 / total, 1.0, "fraction"));
    Ok(())
}

fn spread(values: &[f64]) -> f64 {
    2.0 * midrange(values).1
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub(super) fn run(run: &ScenarioRun) -> Result<RunReport, RunError> {
    let cfg = &run.config;
    let scale = match run.scenario {
        ScenarioKind::VerticalStripB | ScenarioKind::CapacitorXt => cfg.get("x_hi") - cfg.get("x_lo"),
        ScenarioKind::HorizontalStripB => cfg.get("y_hi") - cfg.get("y_lo"),
        ScenarioKind::TriangleB => cfg.get("a"),
        ScenarioKind::DiskB => cfg.get("radius"),
        ScenarioKind::PulsedUniformEXt => cfg.get("duration"),
        ScenarioKind::SolenoidAB | ScenarioKind::VanKampenFlux => 0.0,
    };
    let residual_mollify = if cfg.mollify_width > 0.0 { cfg.mollify_width } else { 0.1 * scale };
    let dressing = cfg.get("dressing");
    let mut ctx = Ctx {
        run,
        spec: run.quadrature()?,
        fd: run.fd()?,
        cancel_tol: 2.0 * run.settings.tol_rel,
        residual_mollify,
        residual_dressing: if dressing != 0.0 { dressing } else { DEFAULT_DRESSING },
        rows: Vec::new(),
        errors: Vec::new(),
    };
    match run.scenario {
        ScenarioKind::VerticalStripB => vertical_strip(&mut ctx)?,
        ScenarioKind::HorizontalStripB => horizontal_strip(&mut ctx)?,
        ScenarioKind::TriangleB => triangle(&mut ctx)?,
        ScenarioKind::DiskB => disk(&mut ctx)?,
        ScenarioKind::SolenoidAB => solenoid(&mut ctx)?,
        ScenarioKind::CapacitorXt => capacitor(&mut ctx)?,
        ScenarioKind::PulsedUniformEXt => pulsed(&mut ctx)?,
        ScenarioKind::VanKampenFlux => van_kampen(&mut ctx)?,
    }
    let metadata = Metadata {
        tool: "nlgauge".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario: super::registry_id(run.scenario).into(),
        params: cfg.params.clone(),
        mollify_width: cfg.mollify_width,
        residual_mollify_width: ctx.residual_mollify,
        residual_dressing: ctx.residual_dressing,
        constants: run.constants,
        quadrature: ctx.spec,
        fd: ctx.fd,
        grids: run.grids.clone(),
        errors: ctx.errors,
    };
    Ok(RunReport::new(ctx.rows, metadata))
}

/// Audits, cross-identification, cancellation and residuals of Λ₁/Λ₂.
struct StaticSetup<'f> {
    exact: &'f FieldDifference,
    resid: &'f FieldDifference,
    base: [f64; 2],
    window: AxisRange2,
    residual_window: AxisRange2,
}

#[derive(Clone, Copy)]
struct AxisRange2 {
    u: AxisRange,
    v: AxisRange,
}

impl AxisRange2 {
    fn grid(&self) -> Result<GridSpec, GaugeError> {
        grid(vec![self.u, self.v])
    }
}

fn static_pair(ctx: &mut Ctx<'_>, s: &StaticSetup<'_>) {
    let (spec, fd, tol) = (ctx.spec, ctx.fd, ctx.cancel_tol);
    let ids = ["bracket_audit_g", "bracket_audit_h", "bracket_cross_identification"];
    ctx.guarded(&ids, |rows| {
        let w = s.window.grid()?;
        let b = select_brackets(s.exact, &w, s.base, 0.0, &spec)?;
        for (id, a) in ids.iter().zip(audit_brackets(s.exact, &b, &w, s.base, 0.0, &spec)?) {
            rows.push(CheckRow::at_most(id, a.max_variation, a.tolerance, "flux"));
        }
        let x = bracket_cross_identification(s.exact, &b, &w, s.base, 0.0, &spec)?;
        rows.push(CheckRow::at_most(ids[2], x, CLOSED_FORM_TOL, "flux"));
        Ok(())
    });
    let ids = ["lambda1_minus_lambda2", "lambda1_minus_lambda2_constant"];
    ctx.guarded(&ids, |rows| {
        let w = s.window.grid()?;
        let b = select_brackets(s.exact, &w, s.base, 0.0, &spec)?;
        let rect = |p: &[f64]| ObservationRect::new(s.base, [p[0], p[1]]);
        let r = check_cancellation(
            |p| Ok(lambda1(s.exact, &rect(p)?, 0.0, &b, &spec)?.total),
            |p| Ok(lambda2(s.exact, &rect(p)?, 0.0, &b, &spec)?.total),
            &w,
            Expected::Zero,
            tol,
        )?;
        rows.push(CheckRow::at_most(ids[0], r.max_error, tol, "flux"));
        rows.push(CheckRow::at_most(ids[1], r.fitted_k.abs(), tol, "flux"));
        Ok(())
    });
    for (name, first) in [("lambda1", true), ("lambda2", false)] {
        let id_set = residual_ids(name);
        let ids: Vec<&str> = id_set.iter().map(String::as_str).collect();
        ctx.guarded(&ids, |rows| {
            let w = s.residual_window.grid()?;
            let b = select_brackets(s.resid, &w, s.base, 0.0, &spec)?;
            let eval = |x: f64, y: f64| {
                let r = ObservationRect::new(s.base, [x, y])?;
                let v = if first { lambda1(s.resid, &r, 0.0, &b, &spec)? } else { lambda2(s.resid, &r, 0.0, &b, &spec)? };
                Ok(v.total)
            };
            residual_rows(rows, name, fd, |p| (Some(p[0]), Some(p[1]), None), |fd| {
                residual_static(eval, s.resid, 0.0, &w, fd, ResidualOptions::default())
            })
        });
    }
}

/// Same as [`static_pair`] for Λ₃/Λ₄ in the (x, t) plane at `y`.
fn xt_pair(ctx: &mut Ctx<'_>, s: &StaticSetup<'_>, y: f64) {
    let (spec, fd, tol) = (ctx.spec, ctx.fd, ctx.cancel_tol);
    let ids = ["bracket_audit_g", "bracket_audit_ghat", "bracket_cross_identification"];
    ctx.guarded(&ids, |rows| {
        let w = s.window.grid()?;
        let b = select_brackets_xt(s.exact, &w, s.base, y, &spec)?;
        for (id, a) in ids.iter().zip(audit_brackets_xt(s.exact, &b, &w, s.base, y, &spec)?) {
            rows.push(CheckRow::at_most(id, a.max_variation, a.tolerance, "phase"));
        }
        let x = bracket_cross_identification_xt(s.exact, &b, &w, s.base, y, &spec)?;
        rows.push(CheckRow::at_most(ids[2], x, CLOSED_FORM_TOL, "phase"));
        Ok(())
    });
    let ids = ["lambda3_minus_lambda4", "lambda3_minus_lambda4_constant"];
    ctx.guarded(&ids, |rows| {
        let w = s.window.grid()?;
        let b = select_brackets_xt(s.exact, &w, s.base, y, &spec)?;
        let rect = |p: &[f64]| SpacetimeRect::new(s.base, [p[0], p[1]]);
        let r = check_cancellation(
            |p| Ok(lambda3(s.exact, &rect(p)?, y, &b, &spec)?.total),
            |p| Ok(lambda4(s.exact, &rect(p)?, y, &b, &spec)?.total),
            &w,
            Expected::Zero,
            tol,
        )?;
        rows.push(CheckRow::at_most(ids[0], r.max_error, tol, "phase"));
        rows.push(CheckRow::at_most(ids[1], r.fitted_k.abs(), tol, "phase"));
        Ok(())
    });
    for (name, first) in [("lambda3", true), ("lambda4", false)] {
        xt_residual(ctx, name, s.resid, s.base, s.residual_window, y, first, fd);
    }
}

#[allow(clippy::too_many_arguments)]
fn xt_residual(
    ctx: &mut Ctx<'_>,
    name: &str,
    field: &FieldDifference,
    base: [f64; 2],
    window: AxisRange2,
    y: f64,
    first: bool,
    fd: FdSpec,
) {
    let spec = ctx.spec;
    let id_set = residual_ids(name);
    let ids: Vec<&str> = id_set.iter().map(String::as_str).collect();
    ctx.guarded(&ids, |rows| {
        let w = window.grid()?;
        let b = select_brackets_xt(field, &w, base, y, &spec)?;
        let eval = |x: f64, t: f64| {
            let r = SpacetimeRect::new(base, [x, t])?;
            let v = if first { lambda3(field, &r, y, &b, &spec)? } else { lambda4(field, &r, y, &b, &spec)? };
            Ok(v.total)
        };
        residual_rows(rows, name, fd, |p| (Some(p[0]), Some(y), Some(p[1])), |fd| {
            residual_xt(eval, field, y, &w, fd, ResidualOptions::default())
        })
    });
}

/// Audits and residuals of the four (x, y, t) solutions.
struct FullSetup<'f> {
    prefix: &'f str,
    exact: &'f FieldDifference,
    resid: &'f FieldDifference,
    base: [f64; 3],
    window: AxisRange2,
    times: AxisRange,
    /// Loop whose `∮A(t₀)` sets the multiplicities; `None` when simply connected.
    multiplicity_loop: Option<ObservationRect>,
}

fn full_brackets(
    field: &FieldDifference,
    s: &FullSetup<'_>,
    spec: &QuadratureSpec,
) -> Result<BracketSetXYT, GaugeError> {
    let mut b = select_brackets_xyt(field, &s.window.grid()?, s.base, spec)?;
    if let Some(rect) = &s.multiplicity_loop {
        let (f, h) = full_multiplicities(field, rect, s.base[2], spec)?;
        b = b.with_multiplicities(f, h);
    }
    Ok(b)
}

fn full_rows(ctx: &mut Ctx<'_>, s: &FullSetup<'_>) {
    let (spec, fd) = (ctx.spec, ctx.fd);
    for v in FullVariant::ALL {
        let names = ["audit_g", "audit_f_x", "audit_f_y"].map(|n| format!("{}{v}_{n}", s.prefix));
        let ids: Vec<&str> = names.iter().map(String::as_str).collect();
        ctx.guarded(&ids, |rows| {
            let b = full_brackets(s.exact, s, &spec)?;
            let times = s.times.values();
            let audits = audit_full(v, s.exact, &b, &s.window.grid()?, s.base, &times, &spec)?;
            for (id, a) in names.iter().zip(audits) {
                rows.push(CheckRow::at_most(id, a.max_variation, a.tolerance, "phase"));
            }
            Ok(())
        });
        let prefix = format!("{}{v}", s.prefix);
        let id_set = residual_ids(&prefix);
        let ids: Vec<&str> = id_set.iter().map(String::as_str).collect();
        ctx.guarded(&ids, |rows| {
            let b = full_brackets(s.resid, s, &spec)?;
            let g = grid(vec![s.window.u, s.window.v, s.times])?;
            let eval = |x: f64, y: f64, t: f64| {
                Ok(lambda_full(v, s.resid, s.base, [x, y, t], &b, &spec)?.total)
            };
            residual_rows(rows, &prefix, fd, |p| (Some(p[0]), Some(p[1]), Some(p[2])), |fd| {
                residual_full(eval, s.resid, &g, fd, ResidualOptions::default())
            })
        });
    }
}

fn vertical_strip(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let (b0, lo, hi) = (ctx.p("b0"), ctx.p("x_lo"), ctx.p("x_hi"));
    let exact = ctx.exact(&cfg)?;
    let resid = ctx.residual(&cfg)?;
    let base = [0.0, 0.0];
    let (ox, oy) = (ctx.run.grids.contains_key("x"), ctx.run.grids.contains_key("y"));
    let u = ctx.axis("x", hi + 0.5, hi + 1.5, 5);
    let v = ctx.axis("y", 0.5, 1.5, 5);
    let window = AxisRange2 { u, v };
    let residual_window = AxisRange2 { u: with_n(u, 10, ox), v: with_n(v, 5, oy) };
    static_pair(ctx, &StaticSetup { exact: &exact, resid: &resid, base, window, residual_window });

    let (spec, tol) = (ctx.spec, ctx.cancel_tol);
    let ids = ["lambda1_nonlocal_equals_product", "lambda2_nonlocal_plus_bracket_constant", "strip_g_constant"];
    ctx.guarded(&ids, |rows| {
        let w = window.grid()?;
        let b = select_brackets(&exact, &w, base, 0.0, &spec)?;
        let (mut d1, mut s2, mut gs) = (Vec::new(), Vec::new(), Vec::new());
        for p in w.points() {
            let r = ObservationRect::new(base, [p[0], p[1]])?;
            let l1 = lambda1(&exact, &r, 0.0, &b, &spec)?;
            let l2 = lambda2(&exact, &r, 0.0, &b, &spec)?;
            d1.push(l1.nonlocal_part - b0 * (hi - lo) * (p[1] - base[1]));
            s2.push(l2.nonlocal_part + l2.bracket_part);
            gs.push(b.g.eval(p[0])?);
        }
        let scale = (b0.abs() * (hi - lo) * v.hi).max(1.0);
        rows.push(CheckRow::at_most(ids[0], max_abs(&d1), tol * scale, "flux"));
        rows.push(CheckRow::at_most(ids[1], spread(&s2), tol * scale, "flux"));
        rows.push(CheckRow::at_most(ids[2], spread(&gs), tol * scale, "flux"));
        Ok(())
    });

    // Time-dependent strip: base to the right of the strip, observation to the left,
    // where E_y vanishes and F = 0 satisfies its conditions.
    let full = FullSetup {
        prefix: "",
        exact: &exact,
        resid: &resid,
        base: [hi + 1.0, 0.0, 0.0],
        window: AxisRange2 {
            u: AxisRange { lo: lo - 1.5, hi: lo - 0.5, n: 5 },
            v: AxisRange { lo: 0.5, hi: 1.5, n: 5 },
        },
        times: AxisRange { lo: 0.2, hi: 1.0, n: 2 },
        multiplicity_loop: None,
    };
    full_rows(ctx, &full);
    Ok(())
}

fn horizontal_strip(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let (b0, lo, hi) = (ctx.p("b0"), ctx.p("y_lo"), ctx.p("y_hi"));
    let exact = ctx.exact(&cfg)?;
    let resid = ctx.residual(&cfg)?;
    let base = [0.0, 0.0];
    let (ox, oy) = (ctx.run.grids.contains_key("x"), ctx.run.grids.contains_key("y"));
    let u = ctx.axis("x", 0.5, 1.5, 5);
    let v = ctx.axis("y", hi + 0.5, hi + 1.5, 5);
    let window = AxisRange2 { u, v };
    let residual_window = AxisRange2 { u: with_n(u, 10, ox), v: with_n(v, 5, oy) };
    static_pair(ctx, &StaticSetup { exact: &exact, resid: &resid, base, window, residual_window });

    let (spec, tol) = (ctx.spec, ctx.cancel_tol);
    let ids = ["lambda1_nonlocal_equals_product", "lambda1_nonlocal_plus_bracket_constant", "strip_h_constant"];
    ctx.guarded(&ids, |rows| {
        let w = window.grid()?;
        let b = select_brackets(&exact, &w, base, 0.0, &spec)?;
        let (mut d1, mut s1, mut hs) = (Vec::new(), Vec::new(), Vec::new());
        for p in w.points() {
            let r = ObservationRect::new(base, [p[0], p[1]])?;
            let l1 = lambda1(&exact, &r, 0.0, &b, &spec)?;
            d1.push(l1.nonlocal_part - b0 * (hi - lo) * (p[0] - base[0]));
            s1.push(l1.nonlocal_part + l1.bracket_part);
            hs.push(b.h.eval(p[1])?);
        }
        let scale = (b0.abs() * (hi - lo) * u.hi).max(1.0);
        rows.push(CheckRow::at_most(ids[0], max_abs(&d1), tol * scale, "flux"));
        rows.push(CheckRow::at_most(ids[1], spread(&s1), tol * scale, "flux"));
        rows.push(CheckRow::at_most(ids[2], spread(&hs), tol * scale, "flux"));
        Ok(())
    });
    Ok(())
}

fn triangle(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let (b0, a, dx, dy) = (ctx.p("b0"), ctx.p("a"), ctx.p("offset_x"), ctx.p("offset_y"));
    let exact = ctx.exact(&cfg)?;
    let resid = ctx.residual(&cfg)?;
    let base = [dx, dy];
    let u = ctx.axis("x", dx + 0.75 * a, dx + 0.95 * a, 5);
    let v = ctx.axis("y", dy + 0.5 * a, dy + 0.85 * a, 5);
    let window = AxisRange2 { u, v };
    // Right of the triangle the flux is a function of y alone; the seams at the
    // base and apex rows stay outside the exclusion margin.
    let residual_window = AxisRange2 {
        u: AxisRange { lo: dx + 1.3 * a, hi: dx + 1.8 * a, n: 10 },
        v: AxisRange { lo: dy + 0.25 * a, hi: dy + 0.6 * a, n: 5 },
    };
    static_pair(ctx, &StaticSetup { exact: &exact, resid: &resid, base, window, residual_window });

    let (spec, tol) = (ctx.spec, ctx.cancel_tol);
    let area = b0 * SQRT3 / 4.0 * a * a;
    let unit = (b0.abs() * a * a).max(f64::MIN_POSITIVE);
    ctx.guarded(&["triangle_total_flux"], |rows| {
        let r = ObservationRect::new([dx - 0.5 * a, dy - 0.5 * a], [dx + 1.5 * a, dy + 1.5 * a])?;
        let f = enclosed_flux(&exact, &r, 0.0, &spec)?;
        rows.push(CheckRow::at_most("triangle_total_flux", (f - area).abs(), tol * unit.max(1.0), "flux"));
        Ok(())
    });
    let ids = [
        "triangle_g_closed_form",
        "triangle_h_closed_form",
        "triangle_g_second_derivative",
        "triangle_h_second_derivative",
    ];
    ctx.guarded(&ids, |rows| {
        let w = window.grid()?;
        let b = select_brackets(&exact, &w, base, 0.0, &spec)?;
        let gd = u.values().into_iter().map(|x| Ok(b.g.eval(x)? - printed_g(x - dx, a, b0))).collect::<Result<Vec<_>, GaugeError>>()?;
        let hd = v.values().into_iter().map(|y| Ok(b.h.eval(y)? - printed_h(y - dy, a, b0))).collect::<Result<Vec<_>, GaugeError>>()?;
        rows.push(CheckRow::at_most(ids[0], midrange(&gd).1, CLOSED_FORM_TOL * unit, "flux"));
        rows.push(CheckRow::at_most(ids[1], midrange(&hd).1, CLOSED_FORM_TOL * unit, "flux"));
        let second = |f: &dyn Fn(f64) -> Result<f64, GaugeError>, c: f64, d: f64| -> Result<f64, GaugeError> {
            Ok((f(c + d)? - 2.0 * f(c)? + f(c - d)?) / (d * d))
        };
        let d = 0.05 * a;
        let g2 = second(&|x| b.g.eval(x), 0.5 * (u.lo + u.hi), d)?;
        let h2 = second(&|y| b.h.eval(y), 0.5 * (v.lo + v.hi), d)?;
        let (eg, eh) = (SQRT3 * b0, -2.0 * b0 / SQRT3);
        let xc = Some(0.5 * (u.lo + u.hi));
        let yc = Some(0.5 * (v.lo + v.hi));
        rows.push(CheckRow::at_most(ids[2], ((g2 - eg) / eg).abs(), CURVATURE_TOL, "relative").at(xc, None, None));
        rows.push(CheckRow::at_most(ids[3], ((h2 - eh) / eh).abs(), CURVATURE_TOL, "relative").at(None, yc, None));
        Ok(())
    });
    let ids = ["triangle_placement_matches", "triangle_placement_best_offset"];
    ctx.guarded(&ids, |rows| {
        let candidates = [-0.5, -0.25, 0.0, 0.25, 0.5];
        let fits = fit_triangle_placement(a, b0, &candidates, &triangle_window(a, 5)?, [0.0, 0.0])?;
        let matched = fits.iter().filter(|f| f.matched).count();
        rows.push(CheckRow::at_most(ids[0], matched as f64, 1.0, "count"));
        let best = fits[0];
        let offset = if best.matched { best.offset[0].hypot(best.offset[1]) } else { f64::INFINITY };
        rows.push(CheckRow::at_most(ids[1], offset, 0.0, "length"));
        Ok(())
    });
    Ok(())
}

fn disk(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let (b0, r0) = (ctx.p("b0"), ctx.p("radius"));
    let exact = ctx.exact(&cfg)?;
    let resid = ctx.residual(&cfg)?;
    let base = [-2.0 * r0, -2.0 * r0];
    let (ox, oy) = (ctx.run.grids.contains_key("x"), ctx.run.grids.contains_key("y"));
    let u = ctx.axis("x", 1.5 * r0, 2.5 * r0, 5);
    let v = ctx.axis("y", 1.5 * r0, 2.5 * r0, 5);
    let window = AxisRange2 { u, v };
    let residual_window = AxisRange2 { u: with_n(u, 10, ox), v: with_n(v, 5, oy) };
    static_pair(ctx, &StaticSetup { exact: &exact, resid: &resid, base, window, residual_window });

    let (spec, tol, fd) = (ctx.spec, ctx.cancel_tol, ctx.fd);
    let unit = (b0.abs() * r0 * r0).max(1.0);
    ctx.guarded(&["disk_total_flux"], |rows| {
        let r = ObservationRect::new(base, [2.0 * r0, 2.0 * r0])?;
        let f = enclosed_flux(&exact, &r, 0.0, &spec)?;
        rows.push(CheckRow::at_most("disk_total_flux", (f - b0 * PI * r0 * r0).abs(), tol * unit, "flux"));
        Ok(())
    });

    // Polar solutions about the disk center with the base inside the disk.
    let pbase = PolarPoint::new(0.5 * r0, 0.0);
    let pwin = grid(vec![
        AxisRange { lo: 1.5 * r0, hi: 2.5 * r0, n: 5 },
        AxisRange { lo: 0.5, hi: 2.5, n: 5 },
    ]);
    let ids = [
        "disk_polar_enclosed",
        "disk_polar_g_constant",
        "lambda_polar1_minus_lambda_polar2",
        "lambda_polar1_minus_lambda_polar2_constant",
    ];
    ctx.guarded(&ids, |rows| {
        let w = pwin.clone()?;
        let b = select_brackets_polar(&exact, &w, pbase, 0.0, &spec)?;
        let mut dev = Vec::new();
        for p in w.points() {
            let f = enclosed_flux_polar(&exact, pbase, PolarPoint::new(p[0], p[1]), 0.0, &spec)?;
            let expect = b0 * (r0 * r0 - pbase.rho * pbase.rho) * (p[1] - pbase.angle) / 2.0;
            dev.push(f - expect);
        }
        let gs = w.axes[0].values().into_iter().map(|r| b.g.eval(r)).collect::<Result<Vec<_>, _>>()?;
        rows.push(CheckRow::at_most(ids[0], max_abs(&dev), tol * unit, "flux"));
        rows.push(CheckRow::at_most(ids[1], spread(&gs), tol * unit, "flux"));
        let pt = |p: &[f64]| PolarPoint::new(p[0], p[1]);
        let r = check_cancellation(
            |p| Ok(lambda_polar1(&exact, pbase, pt(p), 0.0, &b, &spec)?.total),
            |p| Ok(lambda_polar2(&exact, pbase, pt(p), 0.0, &b, &spec)?.total),
            &w,
            Expected::Zero,
            tol,
        )?;
        rows.push(CheckRow::at_most(ids[2], r.max_error, tol, "flux"));
        rows.push(CheckRow::at_most(ids[3], r.fitted_k.abs(), tol, "flux"));
        Ok(())
    });
    // Residuals on a Cartesian grid lying inside the polar window.
    let cart = AxisRange2 {
        u: AxisRange { lo: -r0, hi: 0.5 * r0, n: 10 },
        v: AxisRange { lo: 1.6 * r0, hi: 2.2 * r0, n: 5 },
    };
    for (name, first) in [("lambda_polar1", true), ("lambda_polar2", false)] {
        let id_set = residual_ids(name);
        let ids: Vec<&str> = id_set.iter().map(String::as_str).collect();
        ctx.guarded(&ids, |rows| {
            let b = select_brackets_polar(&resid, &pwin.clone()?, pbase, 0.0, &spec)?;
            let eval = |x: f64, y: f64| {
                let p = PolarPoint::new(x.hypot(y), y.atan2(x));
                let v = if first {
                    lambda_polar1(&resid, pbase, p, 0.0, &b, &spec)?
                } else {
                    lambda_polar2(&resid, pbase, p, 0.0, &b, &spec)?
                };
                Ok(v.total)
            };
            let g = cart.grid()?;
            residual_rows(rows, name, fd, |p| (Some(p[0]), Some(p[1]), None), |fd| {
                residual_static(eval, &resid, 0.0, &g, fd, ResidualOptions::default())
            })
        });
    }
    Ok(())
}

fn solenoid(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let flux = ctx.p("flux");
    let exact = ctx.exact(&cfg)?;
    let resid = ctx.residual(&cfg)?;
    let base = [-1.0, -1.0];
    let (ox, oy) = (ctx.run.grids.contains_key("x"), ctx.run.grids.contains_key("y"));
    let u = ctx.axis("x", 0.5, 1.5, 5);
    let v = ctx.axis("y", 0.5, 1.5, 5);
    let window = AxisRange2 { u, v };
    let residual_window = AxisRange2 { u: with_n(u, 10, ox), v: with_n(v, 5, oy) };
    let (spec, fd) = (ctx.spec, ctx.fd);

    let ids = [
        "f_y0_equals_minus_phi",
        "hhat_x0_equals_phi",
        "ab_lambda1_minus_lambda2",
        "ab_lambda1_minus_lambda2_constant",
        "lambda1_nonlocal_plus_multiplicity",
        "lambda2_nonlocal_plus_multiplicity",
    ];
    ctx.guarded(&ids, |rows| {
        let loop_rect = ObservationRect::new(base, [1.0, 1.0])?;
        let (f, h) = ab_multiplicities(&exact, &loop_rect, 0.0, &spec)?;
        rows.push(CheckRow::at_most(ids[0], (f + flux).abs(), AB_TOL, "flux"));
        rows.push(CheckRow::at_most(ids[1], (h - flux).abs(), AB_TOL, "flux"));
        let b = BracketSet2D::zero().with_multiplicities(f, h);
        let w = window.grid()?;
        let rect = |p: &[f64]| ObservationRect::new(base, [p[0], p[1]]);
        let r = check_cancellation(
            |p| Ok(lambda1(&exact, &rect(p)?, 0.0, &b, &spec)?.total),
            |p| Ok(lambda2(&exact, &rect(p)?, 0.0, &b, &spec)?.total),
            &w,
            Expected::Constant(-flux),
            AB_TOL,
        )?;
        rows.push(CheckRow::at_most(ids[2], r.max_error, AB_TOL, "flux"));
        rows.push(CheckRow::at_most(ids[3], (r.fitted_k + flux).abs(), AB_TOL, "flux"));
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        for p in w.points() {
            let r = rect(&p)?;
            let l1 = lambda1(&exact, &r, 0.0, &b, &spec)?;
            let l2 = lambda2(&exact, &r, 0.0, &b, &spec)?;
            s1.push(l1.nonlocal_part + l1.multiplicity_part);
            s2.push(l2.nonlocal_part + l2.multiplicity_part);
        }
        rows.push(CheckRow::at_most(ids[4], max_abs(&s1), AB_TOL, "flux"));
        rows.push(CheckRow::at_most(ids[5], max_abs(&s2), AB_TOL, "flux"));
        Ok(())
    });
    ctx.guarded(&["ab_multiplicities_outside"], |rows| {
        let r = ObservationRect::new([0.25, 0.25], [1.0, 1.0])?;
        let (f, h) = ab_multiplicities(&exact, &r, 0.0, &spec)?;
        rows.push(CheckRow::at_most("ab_multiplicities_outside", f.abs().max(h.abs()), AB_TOL, "flux"));
        Ok(())
    });
    for (name, first) in [("lambda1", true), ("lambda2", false)] {
        let id_set = residual_ids(name);
        let ids: Vec<&str> = id_set.iter().map(String::as_str).collect();
        ctx.guarded(&ids, |rows| {
            let (f, h) = ab_multiplicities(&resid, &ObservationRect::new(base, [1.0, 1.0])?, 0.0, &spec)?;
            let b = BracketSet2D::zero().with_multiplicities(f, h);
            let g = residual_window.grid()?;
            let eval = |x: f64, y: f64| {
                let r = ObservationRect::new(base, [x, y])?;
                let v = if first { lambda1(&resid, &r, 0.0, &b, &spec)? } else { lambda2(&resid, &r, 0.0, &b, &spec)? };
                Ok(v.total)
            };
            residual_rows(rows, name, fd, |p| (Some(p[0]), Some(p[1]), None), |fd| {
                residual_static(eval, &resid, 0.0, &g, fd, ResidualOptions::default())
            })
        });
    }
    Ok(())
}

fn capacitor(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let (e0, lo, hi) = (ctx.p("e0"), ctx.p("x_lo"), ctx.p("x_hi"));
    let c = ctx.run.constants.c;
    let exact = ctx.exact(&cfg)?;
    let resid = ctx.residual(&cfg)?;
    let (base, y) = ([0.0, 0.0], 0.0);
    let (ox, ot) = (ctx.run.grids.contains_key("x"), ctx.run.grids.contains_key("t"));
    let u = ctx.axis("x", hi + 0.5, hi + 1.5, 5);
    let v = ctx.axis("t", 0.5, 1.5, 5);
    let window = AxisRange2 { u, v };
    let residual_window = AxisRange2 { u: with_n(u, 10, ox), v: with_n(v, 5, ot) };
    xt_pair(ctx, &StaticSetup { exact: &exact, resid: &resid, base, window, residual_window }, y);

    let (spec, tol, fd) = (ctx.spec, ctx.cancel_tol, ctx.fd);
    let ids = ["lambda3_nonlocal_equals_product", "lambda4_nonlocal_plus_bracket_constant"];
    ctx.guarded(&ids, |rows| {
        let w = window.grid()?;
        let b = select_brackets_xt(&exact, &w, base, y, &spec)?;
        let (mut d3, mut s4) = (Vec::new(), Vec::new());
        for p in w.points() {
            let r = SpacetimeRect::new(base, [p[0], p[1]])?;
            let l3 = lambda3(&exact, &r, y, &b, &spec)?;
            let l4 = lambda4(&exact, &r, y, &b, &spec)?;
            d3.push(l3.nonlocal_part - c * e0 * (hi - lo) * (p[1] - base[1]));
            s4.push(l4.nonlocal_part + l4.bracket_part);
        }
        let scale = (c * e0.abs() * (hi - lo) * v.hi).max(1.0);
        rows.push(CheckRow::at_most(ids[0], max_abs(&d3), tol * scale, "phase"));
        rows.push(CheckRow::at_most(ids[1], spread(&s4), tol * scale, "phase"));
        Ok(())
    });
    ctx.guarded(&["spacetime_multiplicities_refused"], |rows| {
        let r = SpacetimeRect::new(base, [hi + 1.0, 2.0])?;
        let refused = match spacetime_multiplicities(&exact, &r, y, &spec) {
            Err(GaugeError::NotConfined { .. }) => 1.0,
            Ok(_) => 0.0,
            Err(e) => return Err(e),
        };
        rows.push(CheckRow::at_least("spacetime_multiplicities_refused", refused, 1.0, "flag"));
        Ok(())
    });

    // Temporal gauge: A_x = −c E₀ t inside the plates, φ = 0. The naive form
    // misses the E flux to the right of the plates.
    let mut tcfg = cfg.clone();
    tcfg.set("temporal_gauge", 1.0)?;
    let tresid = ctx.residual(&tcfg)?;
    let rw = residual_window;
    xt_residual(ctx, "lambda3_temporal_gauge", &tresid, base, rw, y, true, fd);
    ctx.guarded(&["naive_brown_holland_residual"], |rows| {
        let g = rw.grid()?;
        let eval = |x: f64, t: f64| naive_brown_holland(&tresid, &SpacetimeRect::new(base, [x, t])?, y, &spec);
        let rep = residual_xt(eval, &tresid, y, &g, &fd, ResidualOptions::default())?;
        let (x, t) = rep.worst_point().map_or((None, None), |p| (Some(p[0]), Some(p[1])));
        rows.push(
            CheckRow::at_least("naive_brown_holland_residual", rep.max_abs(), BROWN_HOLLAND_MIN, "absolute")
                .at(x, Some(y), t),
        );
        Ok(())
    });
    Ok(())
}

fn pulsed(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let (e0, dur) = (ctx.p("e0"), ctx.p("duration"));
    let c = ctx.run.constants.c;
    let exact = ctx.exact(&cfg)?;
    let resid = ctx.residual(&cfg)?;
    let (base, y) = ([0.0, 0.0], 0.0);
    let (ox, ot) = (ctx.run.grids.contains_key("x"), ctx.run.grids.contains_key("t"));
    let u = ctx.axis("x", 0.5, 1.5, 5);
    let v = ctx.axis("t", 1.5 * dur, 2.5 * dur, 5);
    let window = AxisRange2 { u, v };
    let residual_window = AxisRange2 { u: with_n(u, 10, ox), v: with_n(v, 5, ot) };
    xt_pair(ctx, &StaticSetup { exact: &exact, resid: &resid, base, window, residual_window }, y);

    let (spec, tol) = (ctx.spec, ctx.cancel_tol);
    let ids = ["lambda3_nonlocal_equals_product", "lambda3_nonlocal_plus_bracket_constant"];
    ctx.guarded(&ids, |rows| {
        let w = window.grid()?;
        let b = select_brackets_xt(&exact, &w, base, y, &spec)?;
        let (mut d3, mut s3) = (Vec::new(), Vec::new());
        for p in w.points() {
            let r = SpacetimeRect::new(base, [p[0], p[1]])?;
            let l3 = lambda3(&exact, &r, y, &b, &spec)?;
            d3.push(l3.nonlocal_part - c * e0 * dur * (p[0] - base[0]));
            s3.push(l3.nonlocal_part + l3.bracket_part);
        }
        let scale = (c * e0.abs() * dur * u.hi).max(1.0);
        rows.push(CheckRow::at_most(ids[0], max_abs(&d3), tol * scale, "phase"));
        rows.push(CheckRow::at_most(ids[1], spread(&s3), tol * scale, "phase"));
        Ok(())
    });
    Ok(())
}

fn van_kampen(ctx: &mut Ctx<'_>) -> Result<(), RunError> {
    let cfg = ctx.cfg().clone();
    let profile = cfg.flux_profile()?;
    let t0 = profile.reference_time();
    let phi_t0 = profile.value(t0);
    let exact = ctx.exact(&cfg)?;
    let spec = ctx.spec;
    let rect = ObservationRect::new([-1.0, -1.0], [1.0, 1.0]).map_err(|e| RunError::Config(e.to_string()))?;
    let times: Vec<f64> = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0].iter().map(|d| t0 + d).collect();

    let ids = ["delta_lambda_equals_phi_t0", "delta_lambda_t_spread"];
    ctx.guarded(&ids, |rows| {
        let deltas = times
            .iter()
            .map(|&t| van_kampen_delta(&exact, &rect, t0, t, &spec))
            .collect::<Result<Vec<_>, _>>()?;
        let (worst, dev) = deltas
            .iter()
            .zip(&times)
            .map(|(d, &t)| (t, (d - phi_t0).abs()))
            .fold((t0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        rows.push(CheckRow::at_most(ids[0], dev, VAN_KAMPEN_TOL, "flux").at(Some(1.0), Some(1.0), Some(worst)));
        rows.push(CheckRow::at_most(ids[1], spread(&deltas), VAN_KAMPEN_TOL, "flux"));
        Ok(())
    });
    let shifted_cfg = cfg
        .clone()
        .with("shift_ax", cfg.get("shift_ax") + 0.3)
        .and_then(|c| c.with("shift_ay", cfg.get("shift_ay") - 0.2))?;
    let shifted = ctx.exact(&shifted_cfg)?;
    ctx.guarded(&["delta_lambda_gauge_shift"], |rows| {
        let t = t0 + 1.0;
        let d0 = van_kampen_delta(&exact, &rect, t0, t, &spec)?;
        let d1 = van_kampen_delta(&shifted, &rect, t0, t, &spec)?;
        rows.push(CheckRow::at_most("delta_lambda_gauge_shift", (d1 - d0).abs(), GAUGE_SHIFT_TOL, "flux"));
        Ok(())
    });
    ctx.guarded(&["delta_lambda_full2_minus_fin"], |rows| {
        let t = t0 + 1.0;
        let (f, h) = full_multiplicities(&exact, &rect, t0, &spec)?;
        let b = BracketSetXYT::zero().with_multiplicities(f, h);
        let (base, corner) = ([rect.base[0], rect.base[1], t0], [rect.corner[0], rect.corner[1], t]);
        let l2 = lambda_full(FullVariant::Full2, &exact, base, corner, &b, &spec)?;
        let lf = lambda_full(FullVariant::Fin, &exact, base, corner, &b, &spec)?;
        let d = van_kampen_delta(&exact, &rect, t0, t, &spec)?;
        rows.push(CheckRow::at_most("delta_lambda_full2_minus_fin", (l2.total - lf.total - d).abs(), AB_TOL, "flux"));
        Ok(())
    });

    // Shielded model: E confined to an angular wedge behind the flux, so the
    // observation window sees no field and G = Ĝ = F = 0 are admissible.
    let scfg = cfg.clone().with("shield", 1.0)?;
    let sexact = ctx.exact(&scfg)?;
    let sresid = ctx.residual(&scfg)?;
    let sbase = [-1.5, -1.5];
    let srect = ObservationRect::new(sbase, [1.0, 1.0]).map_err(|e| RunError::Config(e.to_string()))?;
    ctx.guarded(&["shielded_delta_lambda_equals_phi_t0"], |rows| {
        let d = van_kampen_delta(&sexact, &srect, t0, t0 + 1.0, &spec)?;
        rows.push(CheckRow::at_most("shielded_delta_lambda_equals_phi_t0", (d - phi_t0).abs(), VAN_KAMPEN_TOL, "flux"));
        Ok(())
    });
    let full = FullSetup {
        prefix: "shielded_",
        exact: &sexact,
        resid: &sresid,
        base: [sbase[0], sbase[1], t0],
        window: AxisRange2 {
            u: AxisRange { lo: 0.5, hi: 1.5, n: 5 },
            v: AxisRange { lo: 0.5, hi: 1.5, n: 5 },
        },
        times: AxisRange { lo: t0 + 0.5, hi: t0 + 1.5, n: 2 },
        multiplicity_loop: Some(srect),
    };
    full_rows(ctx, &full);
    Ok(())
}
