//! Two-coordinate machinery shared by every solver.
//!
//! A plane problem is `∂Λ/∂u = P`, `∂Λ/∂v = Q` with curl `∂_u Q − ∂_v P`.
//! The static, (x,t), (y,t) and polar systems are all instances:
//!
//! ```text
//!   static  (x, y):  P = A_x,  Q = A_y,      curl = B_z
//!   (x, t) at y:     P = A_x,  Q = −cφ,      curl = c E_x
//!   (y, t) at x:     P = A_y,  Q = −cφ,      curl = c E_y
//!   polar   (ρ, φ):  P = A_ρ,  Q = ρ A_φ,    curl = ρ B_z
//! ```

use crate::fields::{Axis, FieldDifference};
use crate::gauge_static::GaugeError;
use crate::numerics::{
    integrate_1d_with_breaks, integrate_rect_with, NumericsError, QuadratureSpec, Rect,
};

pub(crate) trait Plane: Send + Sync {
    fn p(&self, u: f64, v: f64) -> f64;
    fn q(&self, u: f64, v: f64) -> f64;
    fn curl(&self, u: f64, v: f64) -> f64;
    fn breaks_u(&self, v: (f64, f64)) -> Vec<f64>;
    fn breaks_v(&self, u: (f64, f64)) -> Vec<f64>;
    /// Point fluxes `(u, v, flux)` not represented in `curl`.
    fn point_fluxes(&self) -> Vec<(f64, f64, f64)> {
        Vec::new()
    }
}

/// `∫_{u₀}^{u} P(u′, v) du′ + ∫_{v₀}^{v} Q(u₀, v′) dv′`
pub(crate) fn path_cw<P: Plane + ?Sized>(
    pl: &P,
    base: [f64; 2],
    corner: [f64; 2],
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    let [u0, v0] = base;
    let [u, v] = corner;
    let a = integrate_1d_with_breaks(|s| pl.p(s, v), u0, u, &pl.breaks_u((v, v)), spec)?;
    let b = integrate_1d_with_breaks(|s| pl.q(u0, s), v0, v, &pl.breaks_v((u0, u0)), spec)?;
    Ok(a + b)
}

/// `∫_{u₀}^{u} P(u′, v₀) du′ + ∫_{v₀}^{v} Q(u, v′) dv′`
pub(crate) fn path_ccw<P: Plane + ?Sized>(
    pl: &P,
    base: [f64; 2],
    corner: [f64; 2],
    spec: &QuadratureSpec,
) -> Result<f64, NumericsError> {
    let [u0, v0] = base;
    let [u, v] = corner;
    let a = integrate_1d_with_breaks(|s| pl.p(s, v0), u0, u, &pl.breaks_u((v0, v0)), spec)?;
    let b = integrate_1d_with_breaks(|s| pl.q(u, s), v0, v, &pl.breaks_v((u, u)), spec)?;
    Ok(a + b)
}

/// `∫_{v₀}^{v} dv′ ∫_{u₀}^{u} du′ curl`, oriented, plus enclosed point fluxes.
pub(crate) fn enclosed<P: Plane + ?Sized>(
    pl: &P,
    base: [f64; 2],
    corner: [f64; 2],
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    let rect = Rect::new(base[0], corner[0], base[1], corner[1]);
    let hints = |axis: usize, other: (f64, f64)| {
        if axis == 0 {
            pl.breaks_u(other)
        } else {
            pl.breaks_v(other)
        }
    };
    let smooth = integrate_rect_with(|u, v| pl.curl(u, v), &rect, &hints, spec)?;
    let mut singular = 0.0;
    let orient = (corner[0] - base[0]).signum() * (corner[1] - base[1]).signum();
    let (ulo, uhi) = rect.x_range();
    let (vlo, vhi) = rect.y_range();
    for (pu, pv, flux) in pl.point_fluxes() {
        let scale = 1e-12 * (1.0 + pu.abs() + pv.abs());
        let inside_u = pu > ulo + scale && pu < uhi - scale;
        let inside_v = pv > vlo + scale && pv < vhi - scale;
        let near_u = (pu - ulo).abs() <= scale || (pu - uhi).abs() <= scale;
        let near_v = (pv - vlo).abs() <= scale || (pv - vhi).abs() <= scale;
        if (near_u && pv >= vlo - scale && pv <= vhi + scale)
            || (near_v && pu >= ulo - scale && pu <= uhi + scale)
        {
            return Err(GaugeError::SingularFlux { at: [pu, pv] });
        }
        if inside_u && inside_v {
            singular += orient * flux;
        }
    }
    Ok(smooth + singular)
}

#[derive(Debug, Clone)]
pub(crate) struct StaticPlane {
    pub field: FieldDifference,
    pub t: f64,
}

impl Plane for StaticPlane {
    fn p(&self, u: f64, v: f64) -> f64 {
        self.field.a_x(u, v, self.t)
    }
    fn q(&self, u: f64, v: f64) -> f64 {
        self.field.a_y(u, v, self.t)
    }
    fn curl(&self, u: f64, v: f64) -> f64 {
        self.field.b_z(u, v, self.t)
    }
    fn breaks_u(&self, v: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::X, [0.0, v.0, self.t], [0.0, v.1, self.t])
    }
    fn breaks_v(&self, u: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::Y, [u.0, 0.0, self.t], [u.1, 0.0, self.t])
    }
    fn point_fluxes(&self) -> Vec<(f64, f64, f64)> {
        self.field.flux_lines(self.t).into_iter().map(|l| (l.x, l.y, l.flux)).collect()
    }
}

/// `(x, t)` plane at fixed `y`.
#[derive(Debug, Clone)]
pub(crate) struct XtPlane {
    pub field: FieldDifference,
    pub y: f64,
}

impl Plane for XtPlane {
    fn p(&self, u: f64, v: f64) -> f64 {
        self.field.a_x(u, self.y, v)
    }
    fn q(&self, u: f64, v: f64) -> f64 {
        -self.field.c() * self.field.phi(u, self.y, v)
    }
    fn curl(&self, u: f64, v: f64) -> f64 {
        self.field.c() * self.field.e_x(u, self.y, v)
    }
    fn breaks_u(&self, v: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::X, [0.0, self.y, v.0], [0.0, self.y, v.1])
    }
    fn breaks_v(&self, u: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::T, [u.0, self.y, 0.0], [u.1, self.y, 0.0])
    }
}

/// `(y, t)` plane at fixed `x`.
#[derive(Debug, Clone)]
pub(crate) struct YtPlane {
    pub field: FieldDifference,
    pub x: f64,
}

impl Plane for YtPlane {
    fn p(&self, u: f64, v: f64) -> f64 {
        self.field.a_y(self.x, u, v)
    }
    fn q(&self, u: f64, v: f64) -> f64 {
        -self.field.c() * self.field.phi(self.x, u, v)
    }
    fn curl(&self, u: f64, v: f64) -> f64 {
        self.field.c() * self.field.e_y(self.x, u, v)
    }
    fn breaks_u(&self, v: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::Y, [self.x, 0.0, v.0], [self.x, 0.0, v.1])
    }
    fn breaks_v(&self, u: (f64, f64)) -> Vec<f64> {
        self.field.breaks(Axis::T, [self.x, u.0, 0.0], [self.x, u.1, 0.0])
    }
}

/// `(ρ, φ)` plane about the origin at time `t`.
#[derive(Debug, Clone)]
pub(crate) struct PolarPlane {
    pub field: FieldDifference,
    pub t: f64,
}

impl Plane for PolarPlane {
    fn p(&self, u: f64, v: f64) -> f64 {
        self.field.a_polar(u, v, self.t)[0]
    }
    fn q(&self, u: f64, v: f64) -> f64 {
        u * self.field.a_polar(u, v, self.t)[1]
    }
    fn curl(&self, u: f64, v: f64) -> f64 {
        let (s, c) = v.sin_cos();
        u * self.field.b_z(u * c, u * s, self.t)
    }
    fn breaks_u(&self, _v: (f64, f64)) -> Vec<f64> {
        self.field.radial_breaks()
    }
    fn breaks_v(&self, _u: (f64, f64)) -> Vec<f64> {
        Vec::new()
    }
    fn point_fluxes(&self) -> Vec<(f64, f64, f64)> {
        self.field
            .flux_lines(self.t)
            .into_iter()
            .filter_map(|l| {
                let rho = l.x.hypot(l.y);
                (rho > 0.0).then(|| (rho, l.y.atan2(l.x), l.flux))
            })
            .collect()
    }
}

/// Chebyshev fit of a single constant: `(center, max |value − center|)`.
pub(crate) fn midrange(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let center = 0.5 * (lo + hi);
    let dev = values.iter().map(|v| (v - center).abs()).fold(0.0, f64::max);
    (center, dev)
}
