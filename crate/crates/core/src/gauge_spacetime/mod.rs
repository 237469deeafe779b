//! Time-dependent gauge functions.
//!
//! In one spatial dimension (`y` held fixed) the system `∂Λ/∂x = A_x`,
//! `−(1/c) ∂Λ/∂t = φ` has the two solutions
//!
//! ```text
//!   Λ₃ = ∫ₓ₀ˣ A_x(x′, t) dx′ − c ∫_{t₀}^{t} φ(x₀, t′) dt′ + { c ∬ E_x + g(x) } + τ(t₀)
//!   Λ₄ = ∫ₓ₀ˣ A_x(x′, t₀) dx′ − c ∫_{t₀}^{t} φ(x, t′) dt′ + { −c ∬ E_x + ĝ(t) } + χ(x₀)
//! ```
//!
//! The (x, y, t) solutions live in [`full`].

mod full;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fields::{Axis, FieldDifference};
use crate::gauge_static::{audit_plane, separable_brackets};
use crate::gauge_static::{AuditReport, Bracket, GaugeError, GaugeValue};
use crate::numerics::{integrate_1d_with_breaks, GridSpec, QuadratureSpec};
use crate::plane::{self, XtPlane};

pub use full::{
    audit_full, full_multiplicities, lambda_full, select_brackets_xyt, van_kampen_delta,
    Bracket2, BracketSetXYT, FullVariant,
};

/// Base `(x₀, t₀)` and corner `(x, t)` of a spacetime observation rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeRect {
    pub base: [f64; 2],
    pub corner: [f64; 2],
}

impl SpacetimeRect {
    pub fn new(base: [f64; 2], corner: [f64; 2]) -> Result<Self, GaugeError> {
        if base[0] == corner[0] || base[1] == corner[1] {
            return Err(GaugeError::Degenerate(format!(
                "corner (x={}, t={}) shares a coordinate with base (x={}, t={})",
                corner[0], corner[1], base[0], base[1]
            )));
        }
        Ok(Self { base, corner })
    }
}

#[derive(Debug, Clone)]
pub struct BracketSetXT {
    pub g: Bracket,
    pub ghat: Bracket,
    pub tau_t0: f64,
    pub chi_x0: f64,
    pub constant: f64,
}

impl BracketSetXT {
    pub fn zero() -> Self {
        Self { g: Bracket::zero(), ghat: Bracket::zero(), tau_t0: 0.0, chi_x0: 0.0, constant: 0.0 }
    }

    pub fn with_multiplicities(mut self, tau_t0: f64, chi_x0: f64) -> Self {
        self.tau_t0 = tau_t0;
        self.chi_x0 = chi_x0;
        self
    }
}

fn xt(field: &FieldDifference, y: f64) -> XtPlane {
    XtPlane { field: field.clone(), y }
}

/// `c ∫_{t₀}^{t} dt′ ∫_{x₀}^{x} dx′ E_x(x′, y, t′)`.
pub fn enclosed_electric_flux(
    field: &FieldDifference,
    srect: &SpacetimeRect,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    plane::enclosed(&xt(field, y), srect.base, srect.corner, spec)
}

/// Brackets over `window` (corner x by corner t) extracted as in the static case.
pub fn select_brackets_xt(
    field: &FieldDifference,
    window: &GridSpec,
    base: [f64; 2],
    y: f64,
    spec: &QuadratureSpec,
) -> Result<BracketSetXT, GaugeError> {
    let (g, ghat) = separable_brackets(Arc::new(xt(field, y)), window, base, spec, ("g(x)", "ghat(t)"))?;
    Ok(BracketSetXT { g, ghat, tau_t0: 0.0, chi_x0: 0.0, constant: 0.0 })
}

pub fn audit_brackets_xt(
    field: &FieldDifference,
    brackets: &BracketSetXT,
    window: &GridSpec,
    base: [f64; 2],
    y: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<AuditReport>, GaugeError> {
    audit_plane(
        &xt(field, y),
        &brackets.g,
        &brackets.ghat,
        window,
        base,
        spec,
        ("e_flux_plus_g_independent_of_x", "minus_e_flux_plus_ghat_independent_of_t"),
    )
}

/// Max deviation, after one fitted constant, between the x-independent bracket
/// of Λ₃ and ĝ(t) of Λ₄.
pub fn bracket_cross_identification_xt(
    field: &FieldDifference,
    brackets: &BracketSetXT,
    window: &GridSpec,
    base: [f64; 2],
    y: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    let pl = xt(field, y);
    let mut diffs = Vec::new();
    for p in window.points() {
        let b3 = plane::enclosed(&pl, base, [p[0], p[1]], spec)? + brackets.g.eval(p[0])?;
        diffs.push(b3 - brackets.ghat.eval(p[1])?);
    }
    Ok(plane::midrange(&diffs).1)
}

pub fn lambda3(
    field: &FieldDifference,
    srect: &SpacetimeRect,
    y: f64,
    brackets: &BracketSetXT,
    spec: &QuadratureSpec,
) -> Result<GaugeValue, GaugeError> {
    let pl = xt(field, y);
    let dirac = plane::path_cw(&pl, srect.base, srect.corner, spec)?;
    let nonlocal = plane::enclosed(&pl, srect.base, srect.corner, spec)?;
    let bracket = brackets.g.eval(srect.corner[0])? + brackets.constant;
    Ok(GaugeValue::new(dirac, nonlocal, bracket, brackets.tau_t0))
}

pub fn lambda4(
    field: &FieldDifference,
    srect: &SpacetimeRect,
    y: f64,
    brackets: &BracketSetXT,
    spec: &QuadratureSpec,
) -> Result<GaugeValue, GaugeError> {
    let pl = xt(field, y);
    let dirac = plane::path_ccw(&pl, srect.base, srect.corner, spec)?;
    let nonlocal = -plane::enclosed(&pl, srect.base, srect.corner, spec)?;
    let bracket = brackets.ghat.eval(srect.corner[1])? + brackets.constant;
    Ok(GaugeValue::new(dirac, nonlocal, bracket, brackets.chi_x0))
}

/// `∫ₓ₀ˣ A_x(x′, t) dx′ − c ∫_{t₀}^{t} φ(x, t′) dt′`.
///
/// Correct only when A is static and φ is uniform in space; kept as a negative
/// control.
pub fn naive_brown_holland(
    field: &FieldDifference,
    srect: &SpacetimeRect,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    let ([x0, t0], [x, t]) = (srect.base, srect.corner);
    let bx = field.breaks(Axis::X, [0.0, y, t], [0.0, y, t]);
    let bt = field.breaks(Axis::T, [x, y, 0.0], [x, y, 0.0]);
    let a = integrate_1d_with_breaks(|s| field.a_x(s, y, t), x0, x, &bx, spec)?;
    let p = integrate_1d_with_breaks(|s| field.phi(x, y, s), t0, t, &bt, spec)?;
    Ok(a - field.c() * p)
}

const CONFINEMENT_SAMPLES: usize = 64;

/// `(τ(t₀), χ(x₀))` for a spacetime flux confined strictly inside `srect`.
///
/// τ is the difference of the two path integrals, `τ = cw − ccw = −c∬E_x`, so
/// that the nonlocal term of Λ₃ is cancelled and both solutions reduce to plain
/// line integrals. Fails with [`GaugeError::NotConfined`] when `E_x` is nonzero
/// anywhere on the rectangle boundary.
pub fn spacetime_multiplicities(
    field: &FieldDifference,
    srect: &SpacetimeRect,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), GaugeError> {
    let ([x0, t0], [x1, t1]) = (srect.base, srect.corner);
    let mut worst = (0.0_f64, [x0, t0]);
    let mut probe = |x: f64, t: f64| {
        let e = field.e_x(x, y, t).abs();
        if e > worst.0 {
            worst = (e, [x, t]);
        }
    };
    for k in 0..=CONFINEMENT_SAMPLES {
        let s = k as f64 / CONFINEMENT_SAMPLES as f64;
        let (xs, ts) = (x0 + s * (x1 - x0), t0 + s * (t1 - t0));
        probe(xs, t0);
        probe(xs, t1);
        probe(x0, ts);
        probe(x1, ts);
    }
    if worst.0 > 1e-12 {
        return Err(GaugeError::NotConfined { magnitude: worst.0, at: worst.1 });
    }
    let pl = xt(field, y);
    let tau = plane::path_cw(&pl, srect.base, srect.corner, spec)?
        - plane::path_ccw(&pl, srect.base, srect.corner, spec)?;
    Ok((tau, -tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{build_field, Constants, CustomField, Potentials, ScenarioConfig, ScenarioKind};

    fn cfg(kind: ScenarioKind) -> FieldDifference {
        build_field(&ScenarioConfig::new(kind), Constants::default()).unwrap()
    }

    #[test]
    fn capacitor_nonlocal_term_is_product() {
        let f = cfg(ScenarioKind::CapacitorXt);
        let r = SpacetimeRect::new([0.0, 0.0], [3.0, 2.0]).unwrap();
        let v = lambda3(&f, &r, 0.0, &BracketSetXT::zero(), &QuadratureSpec::default()).unwrap();
        assert!((v.nonlocal_part - 2.0).abs() < 1e-9, "{v:?}");
    }

    #[test]
    fn capacitor_is_not_confined() {
        let f = cfg(ScenarioKind::CapacitorXt);
        let r = SpacetimeRect::new([0.0, 0.0], [3.0, 2.0]).unwrap();
        let e = spacetime_multiplicities(&f, &r, 0.0, &QuadratureSpec::default());
        assert!(matches!(e, Err(GaugeError::NotConfined { .. })));
    }

    #[test]
    fn brown_holland_agrees_for_static_a_and_uniform_phi() {
        let f = CustomField::new(|x, _y, t| Potentials { ax: x.sin(), ay: 0.0, phi: t.cos() })
            .into_field(Constants::default());
        let r = SpacetimeRect::new([0.0, 0.0], [1.5, 0.7]).unwrap();
        let spec = QuadratureSpec::default();
        let bh = naive_brown_holland(&f, &r, 0.0, &spec).unwrap();
        let l3 = lambda3(&f, &r, 0.0, &BracketSetXT::zero(), &spec).unwrap();
        assert!((bh - l3.total).abs() < 1e-9);
    }
}
