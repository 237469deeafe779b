use std::cell::RefCell;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::NumericsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    AdaptiveSimpson,
    CompositeGaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub method: QuadratureMethod,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            method: QuadratureMethod::AdaptiveSimpson,
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        method: QuadratureMethod,
        abs_tol: f64,
        rel_tol: f64,
        max_subdivisions: usize,
    ) -> Result<Self, NumericsError> {
        let s = Self { method, abs_tol, rel_tol, max_subdivisions };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !ok(self.abs_tol) || !ok(self.rel_tol) {
            return Err(NumericsError::InvalidSpec("tolerances must be finite and >= 0".into()));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(NumericsError::InvalidSpec(
                "at least one of abs_tol, rel_tol must be positive".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(NumericsError::InvalidSpec("max_subdivisions must be >= 1".into()));
        }
        Ok(())
    }

    pub fn with_method(self, method: QuadratureMethod) -> Self {
        Self { method, ..self }
    }

    /// Acceptance threshold for an integral of magnitude `value`.
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Breakpoint locations for a two-argument integrand `f(s₀, s₁)`.
///
/// `along(axis, (lo, hi))` returns the kinks or jumps of `f` along `axis`
/// that can occur while the other argument ranges over `[lo, hi]`.
pub trait BreakHints {
    fn along(&self, axis: usize, other: (f64, f64)) -> Vec<f64>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoBreaks;

impl BreakHints for NoBreaks {
    fn along(&self, _axis: usize, _other: (f64, f64)) -> Vec<f64> {
        Vec::new()
    }
}

impl<F> BreakHints for F
where
    F: Fn(usize, (f64, f64)) -> Vec<f64>,
{
    fn along(&self, axis: usize, other: (f64, f64)) -> Vec<f64> {
        self(axis, other)
    }
}

/// Oriented axis-aligned rectangle: x′ runs from `x0` to `x1`, y′ from `y0` to `y1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.x0.min(self.x1), self.x0.max(self.x1))
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.y0.min(self.y1), self.y0.max(self.y1))
    }
}

pub fn integrate_1d<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    integrate_1d_with_breaks(f, a, b, &[], spec)
}

/// `∫ₐᵇ f`, splitting the interval at every breakpoint strictly inside it.
pub fn integrate_1d_with_breaks<F>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(NumericsError::ContractViolation(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let knots = knots(lo, hi, breaks);
    let result = match spec.method {
        QuadratureMethod::AdaptiveSimpson => simpson(&f, &knots, spec),
        QuadratureMethod::CompositeGaussLegendre => gauss_legendre(&f, &knots, spec),
    };
    match result {
        Ok(v) => Ok(sign * v),
        Err(NumericsError::NonConvergence { estimate, error_bound }) => {
            Err(NumericsError::NonConvergence { estimate: sign * estimate, error_bound })
        }
        Err(e) => Err(e),
    }
}

fn knots(lo: f64, hi: f64, breaks: &[f64]) -> Vec<f64> {
    let scale = (hi - lo).max(lo.abs().max(hi.abs()) * 1e-15);
    let mut k: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|b| b.is_finite() && *b > lo + 1e-13 * scale && *b < hi - 1e-13 * scale)
        .collect();
    k.sort_by(f64::total_cmp);
    k.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * scale);
    let mut out = Vec::with_capacity(k.len() + 2);
    out.push(lo);
    out.extend(k);
    out.push(hi);
    out
}

const MIN_DEPTH: u32 = 3;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

fn simpson_rule(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn simpson<F: Fn(f64) -> f64>(
    f: &F,
    knots: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    // A coarse pass fixes the relative part of the target; a second pass runs
    // only if the refined value turns out much smaller than the coarse one.
    let coarse: f64 = knots
        .windows(2)
        .map(|w| {
            let h = (w[1] - w[0]) / 4.0;
            (0..4)
                .map(|i| {
                    let a = w[0] + h * i as f64;
                    let b = if i == 3 { w[1] } else { a + h };
                    simpson_rule(a, b, f(a), f(0.5 * (a + b)), f(b))
                })
                .sum::<f64>()
        })
        .sum();
    let mut target = spec.tolerance(coarse);
    for _ in 0..2 {
        let (value, err, exhausted) = simpson_pass(f, knots, target, spec.max_subdivisions);
        if exhausted {
            return Err(NumericsError::NonConvergence { estimate: value, error_bound: err });
        }
        let needed = spec.tolerance(value);
        if needed >= 0.5 * target {
            return Ok(value);
        }
        target = needed;
    }
    let (value, err, exhausted) = simpson_pass(f, knots, target, spec.max_subdivisions);
    if exhausted {
        return Err(NumericsError::NonConvergence { estimate: value, error_bound: err });
    }
    Ok(value)
}

fn simpson_pass<F: Fn(f64) -> f64>(
    f: &F,
    knots: &[f64],
    target: f64,
    budget: usize,
) -> (f64, f64, bool) {
    let total = knots[knots.len() - 1] - knots[0];
    let mut stack: Vec<Panel> = Vec::new();
    for w in knots.windows(2).rev() {
        let (a, b) = (w[0], w[1]);
        let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
        stack.push(Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole: simpson_rule(a, b, fa, fm, fb),
            tol: target * (b - a) / total,
            depth: 0,
        });
    }
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut used = 0usize;
    let mut exhausted = false;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson_rule(p.a, m, p.fa, flm, p.fm);
        let right = simpson_rule(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        let tiny = m <= p.a || m >= p.b || lm <= p.a || rm >= p.b;
        let converged = p.depth >= MIN_DEPTH
            && (delta.abs() <= 15.0 * p.tol
                || delta.abs() <= 64.0 * f64::EPSILON * (left.abs() + right.abs()));
        if converged || tiny || exhausted {
            sum += left + right + delta / 15.0;
            if !converged {
                err += delta.abs();
            } else {
                err += delta.abs() / 15.0;
            }
            continue;
        }
        if p.depth >= MIN_DEPTH {
            used += 1;
            if used > budget {
                exhausted = true;
                sum += left + right + delta / 15.0;
                err += delta.abs();
                continue;
            }
        }
        let tol = 0.5 * p.tol;
        let depth = p.depth + 1;
        stack.push(Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right, tol, depth });
        stack.push(Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left, tol, depth });
    }
    (sum, err, exhausted)
}

const GL_ORDER: usize = 16;

fn gl_rule() -> &'static [(f64, f64); GL_ORDER] {
    static RULE: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = [(0.0, 0.0); GL_ORDER];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule[i] = (-x, w);
            rule[n - 1 - i] = (x, w);
        }
        rule
    })
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    r * gl_rule().iter().map(|&(x, wt)| wt * f(c + r * x)).sum::<f64>()
}

/// One panel of the adaptive rule: value from its two halves, error from the
/// disagreement with the single-panel value.
struct GlPanel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl GlPanel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Self {
        let m = 0.5 * (a + b);
        let value = gl_panel(f, a, m) + gl_panel(f, m, b);
        Self { a, b, value, error: (value - gl_panel(f, a, b)).abs() }
    }
}

impl PartialEq for GlPanel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for GlPanel {}
impl PartialOrd for GlPanel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GlPanel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error).then(other.a.total_cmp(&self.a))
    }
}

/// Globally adaptive Gauss-Legendre: the panel with the largest error
/// estimate is bisected until the summed estimate meets the tolerance.
fn gauss_legendre<F: Fn(f64) -> f64>(
    f: &F,
    knots: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    let pieces = knots.len() - 1;
    let cap = spec.max_subdivisions.max(2 * pieces);
    let mut heap: BinaryHeap<GlPanel> = knots.windows(2).map(|w| GlPanel::new(f, w[0], w[1])).collect();
    // Final value summed in position order so it does not depend on heap layout.
    let ordered_sum = |heap: &BinaryHeap<GlPanel>| {
        let mut ps: Vec<&GlPanel> = heap.iter().collect();
        ps.sort_by(|p, q| p.a.total_cmp(&q.a));
        ps.iter().map(|p| p.value).sum::<f64>()
    };
    let (mut value, mut error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    loop {
        if error <= spec.tolerance(value) || error <= 64.0 * f64::EPSILON * value.abs() {
            return Ok(ordered_sum(&heap));
        }
        let worst = heap.pop().expect("at least one panel");
        let m = 0.5 * (worst.a + worst.b);
        if heap.len() + 2 > cap || m <= worst.a || m >= worst.b {
            heap.push(worst);
            return Err(NumericsError::NonConvergence { estimate: ordered_sum(&heap), error_bound: error });
        }
        let (l, r) = (GlPanel::new(f, worst.a, m), GlPanel::new(f, m, worst.b));
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
}

/// Runs `body` with a slot that nested integrand closures use to report the
/// first inner failure; the slot wins over the outer result.
fn with_inner_errors<T>(
    body: impl FnOnce(&RefCell<Option<NumericsError>>) -> Result<T, NumericsError>,
) -> Result<T, NumericsError> {
    let slot = RefCell::new(None);
    let out = body(&slot);
    if let Some(e) = slot.into_inner() {
        return Err(e);
    }
    out
}

fn record(slot: &RefCell<Option<NumericsError>>, r: Result<f64, NumericsError>) -> f64 {
    match r {
        Ok(v) => v,
        Err(e) => {
            let mut s = slot.borrow_mut();
            if s.is_none() {
                *s = Some(e);
            }
            0.0
        }
    }
}

pub fn integrate_rect<F>(f: F, rect: &Rect, spec: &QuadratureSpec) -> Result<f64, NumericsError>
where
    F: Fn(f64, f64) -> f64,
{
    integrate_rect_with(f, rect, &NoBreaks, spec)
}

/// `∫_{y0}^{y1} dy′ ∫_{x0}^{x1} dx′ f(x′, y′)` with the inner integral over x′.
pub fn integrate_rect_with<F, H>(
    f: F,
    rect: &Rect,
    hints: &H,
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError>
where
    F: Fn(f64, f64) -> f64,
    H: BreakHints + ?Sized,
{
    let outer_breaks = hints.along(1, rect.x_range());
    with_inner_errors(|slot| {
        integrate_1d_with_breaks(
            |y| {
                let inner_breaks = hints.along(0, (y, y));
                record(
                    slot,
                    integrate_1d_with_breaks(|x| f(x, y), rect.x0, rect.x1, &inner_breaks, spec),
                )
            },
            rect.y0,
            rect.y1,
            &outer_breaks,
            spec,
        )
    })
}

/// Same integral as [`integrate_rect_with`] with the iteration order swapped.
pub fn integrate_rect_reversed_with<F, H>(
    f: F,
    rect: &Rect,
    hints: &H,
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError>
where
    F: Fn(f64, f64) -> f64,
    H: BreakHints + ?Sized,
{
    let outer_breaks = hints.along(0, rect.y_range());
    with_inner_errors(|slot| {
        integrate_1d_with_breaks(
            |x| {
                let inner_breaks = hints.along(1, (x, x));
                record(
                    slot,
                    integrate_1d_with_breaks(|y| f(x, y), rect.y0, rect.y1, &inner_breaks, spec),
                )
            },
            rect.x0,
            rect.x1,
            &outer_breaks,
            spec,
        )
    })
}

pub fn line_integral<V>(v: V, path: &[[f64; 2]], spec: &QuadratureSpec) -> Result<f64, NumericsError>
where
    V: Fn(f64, f64) -> [f64; 2],
{
    line_integral_with(v, path, &NoBreaks, spec)
}

/// `∫ v·dr` along a polyline whose segments are all parallel to an axis.
pub fn line_integral_with<V, H>(
    v: V,
    path: &[[f64; 2]],
    hints: &H,
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError>
where
    V: Fn(f64, f64) -> [f64; 2],
    H: BreakHints + ?Sized,
{
    for w in path.windows(2) {
        let ([xa, ya], [xb, yb]) = (w[0], w[1]);
        if xa != xb && ya != yb {
            return Err(NumericsError::ContractViolation(format!(
                "path segment ({xa}, {ya}) -> ({xb}, {yb}) is not axis-aligned"
            )));
        }
    }
    let mut total = 0.0;
    for w in path.windows(2) {
        let ([xa, ya], [xb, yb]) = (w[0], w[1]);
        if ya == yb && xa != xb {
            let breaks = hints.along(0, (ya, ya));
            total += integrate_1d_with_breaks(|x| v(x, ya)[0], xa, xb, &breaks, spec)?;
        } else if xa == xb && ya != yb {
            let breaks = hints.along(1, (xa, xa));
            total += integrate_1d_with_breaks(|y| v(xa, y)[1], ya, yb, &breaks, spec)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl() -> QuadratureSpec {
        QuadratureSpec::default().with_method(QuadratureMethod::CompositeGaussLegendre)
    }

    #[test]
    fn gauss_legendre_rule_is_normalized() {
        let rule = gl_rule();
        let wsum: f64 = rule.iter().map(|r| r.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // exact through degree 31
        let m30: f64 = rule.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert!((m30 - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn polynomial_exactness_both_methods() {
        for spec in [QuadratureSpec::default(), gl()] {
            let v = integrate_1d(|x| x * x, 0.0, 1.0, &spec).unwrap();
            assert!((v - 1.0 / 3.0).abs() < 1e-14, "{spec:?}");
        }
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate_1d(|x| 1.0 / x, 0.5, 0.5, &QuadratureSpec::default()).unwrap(), 0.0);
    }

    #[test]
    fn arctan_against_dense_simpson_oracle() {
        let f = |x: f64| 1.0 / (1.0 + x * x);
        let n = 1_000_000;
        let h = 1.0 / n as f64;
        let mut oracle = f(0.0) + f(1.0);
        for i in 1..n {
            oracle += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        oracle *= h / 3.0;
        let spec = QuadratureSpec::default();
        for s in [spec, gl()] {
            let v = integrate_1d(f, 0.0, 1.0, &s).unwrap();
            assert!((v - oracle).abs() <= s.tolerance(v));
            assert!((v - std::f64::consts::FRAC_PI_4).abs() <= s.tolerance(v));
        }
    }

    #[test]
    fn antisymmetric_in_limits() {
        let spec = QuadratureSpec::default();
        let f = |x: f64| (3.0 * x).sin() + x;
        let ab = integrate_1d(f, -0.3, 2.0, &spec).unwrap();
        let ba = integrate_1d(f, 2.0, -0.3, &spec).unwrap();
        assert_eq!(ab, -ba);
    }

    #[test]
    fn breakpoints_recover_jump_exactly() {
        let step = |x: f64| if x < 0.3 { 0.0 } else { 1.0 };
        let v = integrate_1d_with_breaks(step, 0.0, 1.0, &[0.3], &gl()).unwrap();
        assert!((v - 0.7).abs() < 1e-14);
        let v = integrate_1d(step, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((v - 0.7).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let spec = QuadratureSpec { max_subdivisions: 1, ..QuadratureSpec::default() };
        let err = integrate_1d(|x| (50.0 * x).sin(), 0.0, 3.0, &spec).unwrap_err();
        match err {
            NumericsError::NonConvergence { estimate, error_bound } => {
                assert!(estimate.is_finite());
                assert!(error_bound > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rect_area_and_strip() {
        let spec = QuadratureSpec::default();
        let r = Rect::new(0.0, 2.0, 0.0, 3.0);
        assert!((integrate_rect(|_, _| 1.0, &r, &spec).unwrap() - 6.0).abs() < 1e-12);
        let strip = |x: f64, _y: f64| if (1.0..=2.0).contains(&x) { 1.0 } else { 0.0 };
        let hints = |axis: usize, _o: (f64, f64)| if axis == 0 { vec![1.0, 2.0] } else { vec![] };
        let r = Rect::new(0.0, 3.0, 0.0, 2.0);
        let a = integrate_rect_with(strip, &r, &hints, &spec).unwrap();
        let b = integrate_rect_reversed_with(strip, &r, &hints, &spec).unwrap();
        assert!((a - 2.0).abs() < 1e-12);
        assert!((a - b).abs() <= 2.0 * spec.tolerance(a));
    }

    #[test]
    fn inner_failure_propagates() {
        let spec = QuadratureSpec { max_subdivisions: 1, ..QuadratureSpec::default() };
        let r = Rect::new(0.0, 3.0, 0.0, 0.1);
        let e = integrate_rect(|x, _| (80.0 * x).sin(), &r, &spec);
        assert!(matches!(e, Err(NumericsError::NonConvergence { .. })));
    }

    #[test]
    fn line_integral_rejects_diagonal() {
        let e = line_integral(|_, _| [1.0, 1.0], &[[0.0, 0.0], [1.0, 1.0]], &QuadratureSpec::default());
        assert!(matches!(e, Err(NumericsError::ContractViolation(_))));
    }

    #[test]
    fn winding_of_flux_line_around_square() {
        let v = |x: f64, y: f64| {
            let r2 = x * x + y * y;
            [-y / r2, x / r2]
        };
        let square = [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5]];
        let spec = QuadratureSpec::default();
        let ccw = line_integral(v, &square, &spec).unwrap();
        // dense polygonal oracle: sum of turning angles along the sampled loop
        let mut oracle = 0.0;
        let n = 4000;
        let mut prev: Option<f64> = None;
        for k in 0..=4 * n {
            let side = (k / n).min(3);
            let s = if k == 4 * n { 1.0 } else { (k % n) as f64 / n as f64 };
            let (a, b) = (square[side], square[side + 1]);
            let p = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
            let th = p[1].atan2(p[0]);
            if let Some(q) = prev {
                let mut d = th - q;
                while d > std::f64::consts::PI {
                    d -= 2.0 * std::f64::consts::PI;
                }
                while d < -std::f64::consts::PI {
                    d += 2.0 * std::f64::consts::PI;
                }
                oracle += d;
            }
            prev = Some(th);
        }
        assert!((oracle - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        assert!((ccw - oracle).abs() < 1e-8);
        let rev: Vec<[f64; 2]> = square.iter().rev().copied().collect();
        let cw = line_integral(v, &rev, &spec).unwrap();
        assert!((cw + ccw).abs() < 1e-12);
    }

    #[test]
    fn constant_field_on_closed_loop_vanishes() {
        let rect = [[0.2, -1.0], [3.0, -1.0], [3.0, 2.5], [0.2, 2.5], [0.2, -1.0]];
        let v = line_integral(|_, _| [0.7, -1.3], &rect, &QuadratureSpec::default()).unwrap();
        assert!(v.abs() < 1e-12);
    }
}
