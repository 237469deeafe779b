//! The four (x, y, t) solutions and the van Kampen phase difference.
//!
//! Every variant shares `−c ∫ φ(x₀, y₀, t′) dt′` and adds two electric
//! double integrals `c ∫dt′ ∫dx′ E_x(x′, Y, t′)` and `c ∫dt′ ∫dy′ E_y(X, y′, t′)`:
//!
//! | variant | A path | B_z term     | Y  | X  | bracket |
//! |---------|--------|--------------|----|----|---------|
//! | full1   | ccw    | −∬B_z(t)     | y  | x₀ | G(y)    |
//! | full2   | ccw    | −∬B_z(t₀)    | y₀ | x  | G(y)    |
//! | full4   | cw     | +∬B_z(t)     | y₀ | x  | Ĝ(x)    |
//! | fin     | cw     | +∬B_z(t₀)    | y  | x₀ | Ĝ(x)    |
//!
//! plus `F(x, y)` and a multiplicity constant.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fields::{Axis, FieldDifference};
use crate::gauge_static::{
    select_brackets, AuditReport, Bracket, GaugeError, GaugeValue, ObservationRect,
};
use crate::numerics::{integrate_1d_with_breaks, GridSpec, QuadratureSpec};
use crate::plane::{self, Plane, StaticPlane, XtPlane, YtPlane};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FullVariant {
    Full1,
    Full2,
    Full4,
    Fin,
}

impl FullVariant {
    pub const ALL: [FullVariant; 4] =
        [FullVariant::Full1, FullVariant::Full2, FullVariant::Full4, FullVariant::Fin];

    pub fn id(self) -> &'static str {
        match self {
            FullVariant::Full1 => "full1",
            FullVariant::Full2 => "full2",
            FullVariant::Full4 => "full4",
            FullVariant::Fin => "fin",
        }
    }

    /// True for the variants whose A integrals run along the ccw route.
    pub fn is_ccw(self) -> bool {
        matches!(self, FullVariant::Full1 | FullVariant::Full2)
    }

    /// True when the magnetic flux enters at the initial time.
    pub fn flux_at_t0(self) -> bool {
        matches!(self, FullVariant::Full2 | FullVariant::Fin)
    }

    /// Whether the E_x row and E_y column sit at the observation point
    /// (`y`, `x₀`) rather than at (`y₀`, `x`).
    fn e_at_observation_row(self) -> bool {
        matches!(self, FullVariant::Full1 | FullVariant::Fin)
    }
}

impl fmt::Display for FullVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FullVariant {
    type Err = GaugeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FullVariant::ALL
            .into_iter()
            .find(|v| v.id() == s)
            .ok_or_else(|| GaugeError::InvalidWindow(format!("unknown variant `{s}`")))
    }
}

pub type Bracket2Fn = Arc<dyn Fn(f64, f64) -> Result<f64, GaugeError> + Send + Sync>;

/// Two-variable bracket F(x, y).
#[derive(Clone)]
pub struct Bracket2 {
    label: String,
    f: Option<Bracket2Fn>,
}

impl fmt::Debug for Bracket2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bracket2({})", self.label)
    }
}

impl Bracket2 {
    pub fn zero() -> Self {
        Self { label: "0".into(), f: None }
    }

    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64, f64) -> Result<f64, GaugeError> + Send + Sync + 'static,
    ) -> Self {
        Self { label: label.into(), f: Some(Arc::new(f)) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64, GaugeError> {
        match &self.f {
            None => Ok(0.0),
            Some(f) => f(x, y),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BracketSetXYT {
    /// G(y, t₀), used by full1 and full2.
    pub g_y: Bracket,
    /// Ĝ(x, t₀), used by full4 and fin.
    pub ghat_x: Bracket,
    pub f_xy: Bracket2,
    pub f_x0t0: f64,
    pub hhat_y0t0: f64,
}

impl BracketSetXYT {
    pub fn zero() -> Self {
        Self {
            g_y: Bracket::zero(),
            ghat_x: Bracket::zero(),
            f_xy: Bracket2::zero(),
            f_x0t0: 0.0,
            hhat_y0t0: 0.0,
        }
    }

    pub fn with_multiplicities(mut self, f_x0t0: f64, hhat_y0t0: f64) -> Self {
        self.f_x0t0 = f_x0t0;
        self.hhat_y0t0 = hhat_y0t0;
        self
    }
}

/// G and Ĝ from the static brackets at `t₀` over `window`; F = 0.
pub fn select_brackets_xyt(
    field: &FieldDifference,
    window: &GridSpec,
    base: [f64; 3],
    spec: &QuadratureSpec,
) -> Result<BracketSetXYT, GaugeError> {
    let s = select_brackets(field, window, [base[0], base[1]], base[2], spec)?;
    Ok(BracketSetXYT { g_y: s.h, ghat_x: s.g, ..BracketSetXYT::zero() })
}

fn ex_term(
    field: &FieldDifference,
    row: f64,
    x0: f64,
    x: f64,
    t0: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    plane::enclosed(&XtPlane { field: field.clone(), y: row }, [x0, t0], [x, t], spec)
}

fn ey_term(
    field: &FieldDifference,
    col: f64,
    y0: f64,
    y: f64,
    t0: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    plane::enclosed(&YtPlane { field: field.clone(), x: col }, [y0, t0], [y, t], spec)
}

pub fn lambda_full(
    variant: FullVariant,
    field: &FieldDifference,
    base: [f64; 3],
    corner: [f64; 3],
    brackets: &BracketSetXYT,
    spec: &QuadratureSpec,
) -> Result<GaugeValue, GaugeError> {
    let [x0, y0, t0] = base;
    let [x, y, t] = corner;
    let (b2, c2) = ([x0, y0], [x, y]);
    let at_t = StaticPlane { field: field.clone(), t };
    let a_path = if variant.is_ccw() {
        plane::path_ccw(&at_t, b2, c2, spec)?
    } else {
        plane::path_cw(&at_t, b2, c2, spec)?
    };
    let bt = field.breaks(Axis::T, [x0, y0, 0.0], [x0, y0, 0.0]);
    let phi = integrate_1d_with_breaks(|s| field.phi(x0, y0, s), t0, t, &bt, spec)?;
    let flux_time = if variant.flux_at_t0() { t0 } else { t };
    let flux = plane::enclosed(&StaticPlane { field: field.clone(), t: flux_time }, b2, c2, spec)?;
    let flux_term = if variant.is_ccw() { -flux } else { flux };
    let (row, col) = if variant.e_at_observation_row() { (y, x0) } else { (y0, x) };
    let e_terms =
        ex_term(field, row, x0, x, t0, t, spec)? + ey_term(field, col, y0, y, t0, t, spec)?;
    let (bracket, multiplicity) = if variant.is_ccw() {
        (brackets.g_y.eval(y)?, brackets.f_x0t0)
    } else {
        (brackets.ghat_x.eval(x)?, brackets.hhat_y0t0)
    };
    let bracket = bracket + brackets.f_xy.eval(x, y)?;
    Ok(GaugeValue::new(a_path - field.c() * phi, flux_term + e_terms, bracket, multiplicity))
}

fn sample5(lo: f64, hi: f64) -> [f64; 5] {
    std::array::from_fn(|k| lo + (hi - lo) * k as f64 / 4.0)
}

fn spread_report(condition: &str, rows: &[Vec<f64>], scale: f64) -> AuditReport {
    let max_variation =
        rows.iter().map(|r| 2.0 * plane::midrange(r).1).fold(0.0, f64::max);
    let tolerance = 1e-6 * scale.max(1.0);
    AuditReport {
        condition: condition.to_string(),
        max_variation,
        tolerance,
        passed: max_variation <= tolerance,
    }
}

fn max_abs(rows: &[Vec<f64>]) -> f64 {
    rows.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

/// Audits the three independence conditions of `variant` on a 5×5 sample of
/// `window` (x by y), the F conditions at every time in `times`.
pub fn audit_full(
    variant: FullVariant,
    field: &FieldDifference,
    brackets: &BracketSetXYT,
    window: &GridSpec,
    base: [f64; 3],
    times: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<AuditReport>, GaugeError> {
    if window.dim() != 2 {
        return Err(GaugeError::InvalidWindow("full-variant audits need an (x, y) window".into()));
    }
    let [x0, y0, t0] = base;
    let xs = sample5(window.axes[0].lo, window.axes[0].hi);
    let ys = sample5(window.axes[1].lo, window.axes[1].hi);
    let at_t0 = StaticPlane { field: field.clone(), t: t0 };
    let mut flux = [[0.0; 5]; 5];
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            flux[i][j] = plane::enclosed(&at_t0, [x0, y0], [x, y], spec)?;
        }
    }
    let mut out = Vec::new();
    if variant.is_ccw() {
        // G(y) − ∬B_z(t₀) independent of y, for each x
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..5).map(|j| Ok(brackets.g_y.eval(ys[j])? - flux[i][j])).collect())
            .collect::<Result<_, GaugeError>>()?;
        out.push(spread_report("g_minus_flux_independent_of_y", &rows, max_abs(&rows)));
    } else {
        // Ĝ(x) + ∬B_z(t₀) independent of x, for each y
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|j| (0..5).map(|i| Ok(brackets.ghat_x.eval(xs[i])? + flux[i][j])).collect())
            .collect::<Result<_, GaugeError>>()?;
        out.push(spread_report("ghat_plus_flux_independent_of_x", &rows, max_abs(&rows)));
    }
    let mut rows_x = Vec::new();
    let mut rows_y = Vec::new();
    for &t in times {
        for &y in &ys {
            let r = xs
                .iter()
                .map(|&x| Ok(brackets.f_xy.eval(x, y)? + ex_term(field, y, x0, x, t0, t, spec)?))
                .collect::<Result<Vec<f64>, GaugeError>>()?;
            rows_x.push(r);
        }
        for &x in &xs {
            let r = ys
                .iter()
                .map(|&y| Ok(brackets.f_xy.eval(x, y)? + ey_term(field, x, y0, y, t0, t, spec)?))
                .collect::<Result<Vec<f64>, GaugeError>>()?;
            rows_y.push(r);
        }
    }
    out.push(spread_report("f_plus_ex_term_independent_of_x", &rows_x, max_abs(&rows_x)));
    out.push(spread_report("f_plus_ey_term_independent_of_y", &rows_y, max_abs(&rows_y)));
    Ok(out)
}

/// Positive-sense `∮A(t)` around `rect`.
fn loop_a(
    field: &FieldDifference,
    rect: &ObservationRect,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    let pl = StaticPlane { field: field.clone(), t };
    Ok(plane::path_ccw(&pl, rect.base, rect.corner, spec)?
        - plane::path_cw(&pl, rect.base, rect.corner, spec)?)
}

/// `(f(x₀, t₀), ĥ(y₀, t₀)) = (∮A(t₀), −∮A(t₀))`, cancelling the t₀ flux terms of
/// full2 and fin when the rectangle encloses a confined flux.
pub fn full_multiplicities(
    field: &FieldDifference,
    rect: &ObservationRect,
    t0: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), GaugeError> {
    let l = loop_a(field, rect, t0, spec)?;
    Ok((l, -l))
}

struct EPlane {
    field: FieldDifference,
    t: f64,
}

impl Plane for EPlane {
    fn p(&self, u: f64, v: f64) -> f64 {
        self.field.e_x(u, v, self.t)
    }
    fn q(&self, u: f64, v: f64) -> f64 {
        self.field.e_y(u, v, self.t)
    }
    fn curl(&self, u: f64, v: f64) -> f64 {
        let [ex, ey] = self.field.e_numeric(u, v, self.t);
        ey - ex
    }
    fn breaks_u(&self, v: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::X, [0.0, v.0, self.t], [0.0, v.1, self.t])
    }
    fn breaks_v(&self, u: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::Y, [u.0, 0.0, self.t], [u.1, 0.0, self.t])
    }
}

/// `∮A(t)·dr + c ∫_{t₀}^{t} dt′ ∮E(t′)·dr`, both loops in the positive sense.
///
/// By Faraday's law this telescopes to the flux at `t₀`.
pub fn van_kampen_delta(
    field: &FieldDifference,
    rect: &ObservationRect,
    t0: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    let a = loop_a(field, rect, t, spec)?;
    let err = RefCell::new(None);
    let loop_e = |s: f64| {
        let pl = EPlane { field: field.clone(), t: s };
        let r = plane::path_ccw(&pl, rect.base, rect.corner, spec)
            .and_then(|ccw| Ok(ccw - plane::path_cw(&pl, rect.base, rect.corner, spec)?));
        r.unwrap_or_else(|e| {
            err.borrow_mut().get_or_insert(e);
            0.0
        })
    };
    let bt = field.breaks(Axis::T, [rect.base[0], rect.base[1], 0.0], [rect.corner[0], rect.corner[1], 0.0]);
    let e = integrate_1d_with_breaks(loop_e, t0, t, &bt, spec)?;
    if let Some(e) = err.into_inner() {
        return Err(e.into());
    }
    Ok(a + field.c() * e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{build_field, Constants, ScenarioConfig, ScenarioKind};

    fn vk(profile: f64) -> FieldDifference {
        let cfg = ScenarioConfig::new(ScenarioKind::VanKampenFlux).with("profile", profile).unwrap();
        build_field(&cfg, Constants::default()).unwrap()
    }

    #[test]
    fn variant_ids_round_trip() {
        for v in FullVariant::ALL {
            assert_eq!(v.id().parse::<FullVariant>().unwrap(), v);
        }
    }

    #[test]
    fn constant_flux_delta_is_flux() {
        let f = vk(0.0);
        let r = ObservationRect::new([-1.0, -1.0], [1.0, 1.0]).unwrap();
        let d = van_kampen_delta(&f, &r, 0.0, 2.0, &QuadratureSpec::default()).unwrap();
        assert!((d - 1.0).abs() < 1e-8, "{d}");
    }

    #[test]
    fn linear_flux_delta_is_initial_flux() {
        let f = vk(1.0);
        let r = ObservationRect::new([-1.0, -1.0], [1.5, 0.5]).unwrap();
        for t in [0.5, 1.0, 3.0] {
            let d = van_kampen_delta(&f, &r, 0.0, t, &QuadratureSpec::default()).unwrap();
            assert!((d - 1.0).abs() < 1e-8, "t={t}: {d}");
        }
    }

    #[test]
    fn full2_minus_fin_reproduces_delta() {
        let f = vk(1.0);
        let spec = QuadratureSpec::default();
        let rect = ObservationRect::new([-1.0, -1.0], [1.0, 1.0]).unwrap();
        let (fm, hm) = full_multiplicities(&f, &rect, 0.0, &spec).unwrap();
        let b = BracketSetXYT::zero().with_multiplicities(fm, hm);
        let (base, corner) = ([-1.0, -1.0, 0.0], [1.0, 1.0, 1.5]);
        let l2 = lambda_full(FullVariant::Full2, &f, base, corner, &b, &spec).unwrap();
        let lf = lambda_full(FullVariant::Fin, &f, base, corner, &b, &spec).unwrap();
        let d = van_kampen_delta(&f, &rect, 0.0, 1.5, &spec).unwrap();
        assert!((l2.total - lf.total - d).abs() < 1e-8);
    }
}
