//! Static gauge functions Λ(x, y) for a magnetic field difference.
//!
//! Two solutions, one per path ordering from the base `(x₀, y₀)`:
//!
//! ```text
//!   Λ₁ = ∫ₓ₀ˣ A_x(x′, y) dx′ + ∫_{y₀}^{y} A_y(x₀, y′) dy′ + { ∬ B_z + g(x) } + f(y₀)
//!   Λ₂ = ∫ₓ₀ˣ A_x(x′, y₀) dx′ + ∫_{y₀}^{y} A_y(x, y′) dy′ + { −∬ B_z + h(y) } + ĥ(x₀)
//! ```
//!
//! with `∬ = ∫_{y₀}^{y} dy′ ∫_{x₀}^{x} dx′`. The bracket `{…}` of Λ₁ must not
//! depend on x and that of Λ₂ must not depend on y; [`select_brackets`]
//! extracts g and h numerically from the enclosed-flux function.

mod polar;
mod triangle;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::FieldDifference;
use crate::numerics::{GridSpec, NumericsError, QuadratureSpec};
use crate::plane::{self, Plane, StaticPlane};

pub use polar::{
    enclosed_flux_polar, lambda_polar1, lambda_polar2, select_brackets_polar, PolarPoint,
};
pub use triangle::{
    fit_triangle_placement, printed_g, printed_h, triangle_window, PlacementFit,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaugeError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("degenerate observation geometry: {0}")]
    Degenerate(String),
    #[error(
        "enclosed flux is not separable over the window: mixed difference {max_mixed:.3e} exceeds {tolerance:.3e} at ({}, {})",
        worst[0], worst[1]
    )]
    Separability { max_mixed: f64, tolerance: f64, worst: [f64; 2] },
    #[error("flux line at ({}, {}) lies on the integration path", at[0], at[1])]
    SingularFlux { at: [f64; 2] },
    #[error(
        "field is not confined inside the rectangle: |field| = {magnitude:.3e} on the boundary at ({}, {})",
        at[0], at[1]
    )]
    NotConfined { magnitude: f64, at: [f64; 2] },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
}

/// Base point and observation corner of the rectangle built by the two paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservationRect {
    pub base: [f64; 2],
    pub corner: [f64; 2],
}

impl ObservationRect {
    pub fn new(base: [f64; 2], corner: [f64; 2]) -> Result<Self, GaugeError> {
        if base[0] == corner[0] || base[1] == corner[1] {
            return Err(GaugeError::Degenerate(format!(
                "corner ({}, {}) shares a coordinate with base ({}, {})",
                corner[0], corner[1], base[0], base[1]
            )));
        }
        Ok(Self { base, corner })
    }

    /// Vertices traversed in the positive sense when the corner lies up and right.
    pub fn loop_path(&self) -> [[f64; 2]; 5] {
        let ([x0, y0], [x, y]) = (self.base, self.corner);
        [[x0, y0], [x, y0], [x, y], [x0, y], [x0, y0]]
    }
}

pub type BracketFn = Arc<dyn Fn(f64) -> Result<f64, GaugeError> + Send + Sync>;

/// One-variable bracket function (g, h, ĝ, G, Ĝ).
#[derive(Clone)]
pub struct Bracket {
    label: String,
    f: Option<BracketFn>,
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bracket({})", self.label)
    }
}

impl Bracket {
    pub fn zero() -> Self {
        Self { label: "0".into(), f: None }
    }

    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64) -> Result<f64, GaugeError> + Send + Sync + 'static,
    ) -> Self {
        Self { label: label.into(), f: Some(Arc::new(f)) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_none()
    }

    pub fn eval(&self, s: f64) -> Result<f64, GaugeError> {
        match &self.f {
            None => Ok(0.0),
            Some(f) => f(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BracketSet2D {
    pub g: Bracket,
    pub h: Bracket,
    pub f_y0: f64,
    pub hhat_x0: f64,
    pub constant: f64,
}

impl BracketSet2D {
    pub fn zero() -> Self {
        Self { g: Bracket::zero(), h: Bracket::zero(), f_y0: 0.0, hhat_x0: 0.0, constant: 0.0 }
    }

    pub fn with_multiplicities(mut self, f_y0: f64, hhat_x0: f64) -> Self {
        self.f_y0 = f_y0;
        self.hhat_x0 = hhat_x0;
        self
    }
}

/// A Λ evaluation split into its printed parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeValue {
    pub total: f64,
    pub dirac_part: f64,
    pub nonlocal_part: f64,
    pub bracket_part: f64,
    pub multiplicity_part: f64,
}

impl GaugeValue {
    pub fn new(dirac: f64, nonlocal: f64, bracket: f64, multiplicity: f64) -> Self {
        Self {
            total: dirac + nonlocal + bracket + multiplicity,
            dirac_part: dirac,
            nonlocal_part: nonlocal,
            bracket_part: bracket,
            multiplicity_part: multiplicity,
        }
    }
}

/// Outcome of checking one independence condition over a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub condition: String,
    pub max_variation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn static_plane(field: &FieldDifference, t: f64) -> StaticPlane {
    StaticPlane { field: field.clone(), t }
}

pub fn dirac_phase_cw(
    field: &FieldDifference,
    rect: &ObservationRect,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    Ok(plane::path_cw(&static_plane(field, t), rect.base, rect.corner, spec)?)
}

pub fn dirac_phase_ccw(
    field: &FieldDifference,
    rect: &ObservationRect,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    Ok(plane::path_ccw(&static_plane(field, t), rect.base, rect.corner, spec)?)
}

/// `∫_{y₀}^{y} dy′ ∫_{x₀}^{x} dx′ B_z`, including flux lines strictly inside.
pub fn enclosed_flux(
    field: &FieldDifference,
    rect: &ObservationRect,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    plane::enclosed(&static_plane(field, t), rect.base, rect.corner, spec)
}

pub(crate) fn window_2d(window: &GridSpec) -> Result<(crate::numerics::AxisRange, crate::numerics::AxisRange), GaugeError> {
    if window.dim() != 2 {
        return Err(GaugeError::InvalidWindow(format!(
            "expected a 2-axis window, got {} axes",
            window.dim()
        )));
    }
    Ok((window.axes[0], window.axes[1]))
}

/// Extracts `g(u) = −[F(u, v_a) − F(u_a, v_a)]` and `h(v) = F(u_a, v)` from the
/// enclosed-flux function after checking that it separates over the window.
pub(crate) fn separable_brackets<P: Plane + 'static>(
    pl: Arc<P>,
    window: &GridSpec,
    base: [f64; 2],
    spec: &QuadratureSpec,
    names: (&str, &str),
) -> Result<(Bracket, Bracket), GaugeError> {
    let (wu, wv) = window_2d(window)?;
    let (ua, va) = (wu.lo, wv.lo);
    let flux = |u: f64, v: f64| plane::enclosed(pl.as_ref(), base, [u, v], spec);
    let us = wu.values();
    let vs = wv.values();
    let row_a: Vec<f64> = us.iter().map(|&u| flux(u, va)).collect::<Result<_, _>>()?;
    let col_a: Vec<f64> = vs.iter().map(|&v| flux(ua, v)).collect::<Result<_, _>>()?;
    let faa = row_a[0];
    let mut max_f: f64 = faa.abs();
    let mut worst = (0.0, [ua, va]);
    for (i, &u) in us.iter().enumerate().skip(1) {
        for (j, &v) in vs.iter().enumerate().skip(1) {
            let f = flux(u, v)?;
            max_f = max_f.max(f.abs());
            let mixed = (f - row_a[i] - col_a[j] + faa).abs();
            if mixed > worst.0 {
                worst = (mixed, [u, v]);
            }
        }
    }
    let tolerance = 1e-6 * max_f + 1e-12;
    if worst.0 > tolerance {
        return Err(GaugeError::Separability { max_mixed: worst.0, tolerance, worst: worst.1 });
    }
    let spec = *spec;
    let pg = pl.clone();
    let g = Bracket::new(names.0, move |u| {
        Ok(-(plane::enclosed(pg.as_ref(), base, [u, va], &spec)? - faa))
    });
    let h = Bracket::new(names.1, move |v| plane::enclosed(pl.as_ref(), base, [ua, v], &spec));
    Ok((g, h))
}

/// Checks `{∬ + g(u)}` is u-independent and `{−∬ + h(v)}` is v-independent on a
/// 5×5 sample of the window.
pub(crate) fn audit_plane<P: Plane + ?Sized>(
    pl: &P,
    g: &Bracket,
    h: &Bracket,
    window: &GridSpec,
    base: [f64; 2],
    spec: &QuadratureSpec,
    names: (&str, &str),
) -> Result<Vec<AuditReport>, GaugeError> {
    let (wu, wv) = window_2d(window)?;
    let sample = |r: crate::numerics::AxisRange| -> Vec<f64> {
        (0..5).map(|k| r.lo + (r.hi - r.lo) * k as f64 / 4.0).collect()
    };
    let (us, vs) = (sample(wu), sample(wv));
    let gs: Vec<f64> = us.iter().map(|&u| g.eval(u)).collect::<Result<_, _>>()?;
    let hs: Vec<f64> = vs.iter().map(|&v| h.eval(v)).collect::<Result<_, _>>()?;
    let mut f = vec![vec![0.0; 5]; 5];
    let mut scale: f64 = 1.0;
    for (i, &u) in us.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate() {
            f[i][j] = plane::enclosed(pl, base, [u, v], spec)?;
            scale = scale.max(f[i][j].abs());
        }
    }
    let tolerance = 1e-6 * scale;
    let mut var1: f64 = 0.0;
    #[allow(clippy::needless_range_loop)]
    for j in 0..5 {
        let vals: Vec<f64> = (0..5).map(|i| f[i][j] + gs[i]).collect();
        var1 = var1.max(plane::midrange(&vals).1 * 2.0);
    }
    let mut var2: f64 = 0.0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..5 {
        let vals: Vec<f64> = (0..5).map(|j| -f[i][j] + hs[j]).collect();
        var2 = var2.max(plane::midrange(&vals).1 * 2.0);
    }
    Ok(vec![
        AuditReport {
            condition: names.0.to_string(),
            max_variation: var1,
            tolerance,
            passed: var1 <= tolerance,
        },
        AuditReport {
            condition: names.1.to_string(),
            max_variation: var2,
            tolerance,
            passed: var2 <= tolerance,
        },
    ])
}

/// Brackets for both static solutions over `window` (corner x by corner y).
///
/// Anchor `(x_a, y_a)` is the window's minimum corner and the shared constant is 0;
/// multiplicities are 0.
pub fn select_brackets(
    field: &FieldDifference,
    window: &GridSpec,
    base: [f64; 2],
    t: f64,
    spec: &QuadratureSpec,
) -> Result<BracketSet2D, GaugeError> {
    let pl = Arc::new(static_plane(field, t));
    let (g, h) = separable_brackets(pl, window, base, spec, ("g(x)", "h(y)"))?;
    Ok(BracketSet2D { g, h, f_y0: 0.0, hhat_x0: 0.0, constant: 0.0 })
}

/// Audits the independence conditions of both brackets on a 5×5 sample.
pub fn audit_brackets(
    field: &FieldDifference,
    brackets: &BracketSet2D,
    window: &GridSpec,
    base: [f64; 2],
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<AuditReport>, GaugeError> {
    audit_plane(
        &static_plane(field, t),
        &brackets.g,
        &brackets.h,
        window,
        base,
        spec,
        ("flux_plus_g_independent_of_x", "minus_flux_plus_h_independent_of_y"),
    )
}

/// Max deviation, after fitting one constant, between the x-independent bracket
/// of Λ₁ and h(y) of Λ₂ over the window.
pub fn bracket_cross_identification(
    field: &FieldDifference,
    brackets: &BracketSet2D,
    window: &GridSpec,
    base: [f64; 2],
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    let pl = static_plane(field, t);
    let mut diffs = Vec::new();
    for p in window.points() {
        let bracket1 = plane::enclosed(&pl, base, [p[0], p[1]], spec)? + brackets.g.eval(p[0])?;
        diffs.push(bracket1 - brackets.h.eval(p[1])?);
    }
    Ok(plane::midrange(&diffs).1)
}

pub fn lambda1(
    field: &FieldDifference,
    rect: &ObservationRect,
    t: f64,
    brackets: &BracketSet2D,
    spec: &QuadratureSpec,
) -> Result<GaugeValue, GaugeError> {
    let dirac = dirac_phase_cw(field, rect, t, spec)?;
    let nonlocal = enclosed_flux(field, rect, t, spec)?;
    let bracket = brackets.g.eval(rect.corner[0])? + brackets.constant;
    Ok(GaugeValue::new(dirac, nonlocal, bracket, brackets.f_y0))
}

pub fn lambda2(
    field: &FieldDifference,
    rect: &ObservationRect,
    t: f64,
    brackets: &BracketSet2D,
    spec: &QuadratureSpec,
) -> Result<GaugeValue, GaugeError> {
    let dirac = dirac_phase_ccw(field, rect, t, spec)?;
    let nonlocal = -enclosed_flux(field, rect, t, spec)?;
    let bracket = brackets.h.eval(rect.corner[1])? + brackets.constant;
    Ok(GaugeValue::new(dirac, nonlocal, bracket, brackets.hhat_x0))
}

/// `(f(y₀), ĥ(x₀)) = (−∮A, +∮A)` with the loop run base → (x, y₀) → (x, y) → (x₀, y) → base.
pub fn ab_multiplicities(
    field: &FieldDifference,
    rect: &ObservationRect,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), GaugeError> {
    let pl = static_plane(field, t);
    let loop_integral = plane::path_ccw(&pl, rect.base, rect.corner, spec)?
        - plane::path_cw(&pl, rect.base, rect.corner, spec)?;
    Ok((-loop_integral, loop_integral))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{build_field, Constants, ScenarioConfig, ScenarioKind};
    use crate::numerics::AxisRange;

    fn field(kind: ScenarioKind) -> FieldDifference {
        build_field(&ScenarioConfig::new(kind), Constants::default()).unwrap()
    }

    #[test]
    fn rect_rejects_shared_coordinates() {
        assert!(ObservationRect::new([0.0, 0.0], [0.0, 1.0]).is_err());
        assert!(ObservationRect::new([0.0, 0.0], [1.0, 0.0]).is_err());
    }

    #[test]
    fn gauge_value_total_is_sum() {
        let v = GaugeValue::new(0.1, 0.2, 0.3, 0.4);
        assert_eq!(v.total, 0.1 + 0.2 + 0.3 + 0.4);
    }

    #[test]
    fn strip_ramp_gauge_cw_phase_vanishes() {
        let f = field(ScenarioKind::VerticalStripB);
        let r = ObservationRect::new([0.0, 0.0], [3.0, 2.0]).unwrap();
        let spec = QuadratureSpec::default();
        assert_eq!(dirac_phase_cw(&f, &r, 0.0, &spec).unwrap(), 0.0);
        assert!((enclosed_flux(&f, &r, 0.0, &spec).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn separability_violation_is_reported() {
        let f = field(ScenarioKind::VerticalStripB);
        // corners straddle the strip, so the flux depends jointly on x and y
        let w = GridSpec::new(vec![
            AxisRange::new(0.5, 2.5, 5).unwrap(),
            AxisRange::new(0.5, 2.0, 5).unwrap(),
        ])
        .unwrap();
        let e = select_brackets(&f, &w, [0.0, 0.0], 0.0, &QuadratureSpec::default());
        assert!(matches!(e, Err(GaugeError::Separability { .. })));
    }

    #[test]
    fn flux_line_on_boundary_is_rejected() {
        let f = field(ScenarioKind::SolenoidAB);
        let r = ObservationRect::new([0.0, -1.0], [1.0, 1.0]).unwrap();
        let e = enclosed_flux(&f, &r, 0.0, &QuadratureSpec::default());
        assert!(matches!(e, Err(GaugeError::SingularFlux { .. })));
    }
}
