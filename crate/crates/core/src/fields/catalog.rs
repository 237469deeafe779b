//! Analytic field configurations and their gauge choices.
//!
//! | model            | potentials                                      |
//! |------------------|-------------------------------------------------|
//! | vertical strip   | `A_y = B₀(t)·∫_{−∞}^{x} 1_strip`                  |
//! | horizontal strip | `A_x = −B₀(t)·∫_{−∞}^{y} 1_strip`                 |
//! | triangle         | `A_y = B₀·(chord of the row y left of x)`         |
//! | disk             | symmetric, `A_φ = B₀·M(ρ)/ρ`                      |
//! | flux line        | `A = (Φ/2π)(−y, x)/ρ²`                            |
//! | capacitor        | `φ = −E₀·∫_{−∞}^{x} 1_plates` (or temporal gauge) |
//! | pulsed E         | `φ = −E₀·x·1[0 ≤ t ≤ T]`                          |
//!
//! Edges are sharp unless a mollify width is given; smoothing is applied
//! to the field so that integrated fluxes and strip lengths are unchanged.

use std::f64::consts::PI;
use std::sync::Arc;

use super::profile::{smoothstep, FluxProfile, Window};
use super::{Axis, FieldModel, FluxLine, Potentials};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripOrientation {
    /// Field confined to `x ∈ [lo, hi]`, all y.
    Vertical,
    /// Field confined to `y ∈ [lo, hi]`, all x.
    Horizontal,
}

/// Uniform strip of magnetic field, optionally growing as `B₀(1 + εt)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub orientation: StripOrientation,
    pub b0: f64,
    pub window: Window,
    pub rate: f64,
    pub c: f64,
}

impl Strip {
    fn coord(&self, x: f64, y: f64) -> f64 {
        match self.orientation {
            StripOrientation::Vertical => x,
            StripOrientation::Horizontal => y,
        }
    }

    fn amplitude(&self, t: f64) -> f64 {
        self.b0 * (1.0 + self.rate * t)
    }
}

impl FieldModel for Strip {
    fn potentials(&self, x: f64, y: f64, t: f64) -> Potentials {
        let r = self.amplitude(t) * self.window.ramp(self.coord(x, y));
        match self.orientation {
            StripOrientation::Vertical => Potentials { ax: 0.0, ay: r, phi: 0.0 },
            StripOrientation::Horizontal => Potentials { ax: -r, ay: 0.0, phi: 0.0 },
        }
    }

    fn b_z(&self, x: f64, y: f64, t: f64) -> Option<f64> {
        Some(self.amplitude(t) * self.window.value(self.coord(x, y)))
    }

    fn e_field(&self, x: f64, y: f64, _t: f64) -> Option<[f64; 2]> {
        let r = self.b0 * self.rate * self.window.ramp(self.coord(x, y)) / self.c;
        Some(match self.orientation {
            StripOrientation::Vertical => [0.0, -r],
            StripOrientation::Horizontal => [r, 0.0],
        })
    }

    fn breaks(&self, axis: Axis, _lo: [f64; 3], _hi: [f64; 3]) -> Vec<f64> {
        match (self.orientation, axis) {
            (StripOrientation::Vertical, Axis::X) | (StripOrientation::Horizontal, Axis::Y) => {
                self.window.breaks()
            }
            _ => Vec::new(),
        }
    }

    fn edge_distance(&self, x: f64, y: f64, _t: f64) -> f64 {
        self.window.edge_distance(self.coord(x, y))
    }

    fn mollified(&self, width: f64) -> Option<Arc<dyn FieldModel>> {
        Some(Arc::new(Strip { window: Window { width, ..self.window }, ..*self }))
    }
}

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Equilateral triangle of side `a` with its base on `y = dy` from `x = dx`
/// to `x = dx + a` and its apex above the base midpoint.
///
/// Mollification smooths only the two slanted edges, row by row, so every
/// horizontal chord keeps its exact length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub b0: f64,
    pub a: f64,
    pub dx: f64,
    pub dy: f64,
    pub width: f64,
}

impl Triangle {
    pub fn height(&self) -> f64 {
        0.5 * SQRT3 * self.a
    }

    pub fn vertices(&self) -> [[f64; 2]; 3] {
        [
            [self.dx, self.dy],
            [self.dx + self.a, self.dy],
            [self.dx + 0.5 * self.a, self.dy + self.height()],
        ]
    }

    fn row(&self, y: f64) -> Option<Window> {
        let s = y - self.dy;
        if s < 0.0 || s > self.height() {
            return None;
        }
        Some(Window::new(self.dx + s / SQRT3, self.dx + self.a - s / SQRT3, self.width))
    }

    fn in_rows(&self, y: f64) -> bool {
        y >= self.dy && y <= self.dy + self.height()
    }

    fn shifts(&self) -> Vec<f64> {
        if self.width == 0.0 {
            vec![0.0]
        } else {
            vec![-0.5 * self.width, 0.5 * self.width]
        }
    }

    /// Row at which the two smoothed edges begin to overlap.
    fn overlap_row(&self) -> Option<f64> {
        (self.width > 0.0 && self.width < self.a)
            .then_some(self.dy + 0.5 * SQRT3 * (self.a - self.width))
    }
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let s = (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
    let (qx, qy) = (a[0] + s * dx - p[0], a[1] + s * dy - p[1]);
    (qx * qx + qy * qy).sqrt()
}

impl FieldModel for Triangle {
    fn potentials(&self, x: f64, y: f64, _t: f64) -> Potentials {
        let ay = self.row(y).map_or(0.0, |w| self.b0 * w.ramp(x));
        Potentials { ax: 0.0, ay, phi: 0.0 }
    }

    fn b_z(&self, x: f64, y: f64, _t: f64) -> Option<f64> {
        Some(self.row(y).map_or(0.0, |w| self.b0 * w.value(x)))
    }

    fn e_field(&self, _x: f64, _y: f64, _t: f64) -> Option<[f64; 2]> {
        Some([0.0, 0.0])
    }

    fn breaks(&self, axis: Axis, lo: [f64; 3], hi: [f64; 3]) -> Vec<f64> {
        let mut out = Vec::new();
        let shifts = self.shifts();
        match axis {
            Axis::X => {
                let mut rows = vec![lo[1], hi[1], self.dy, self.dy + self.height()];
                rows.extend(self.overlap_row());
                for y in rows {
                    if y < lo[1] || y > hi[1] || !self.in_rows(y) {
                        continue;
                    }
                    let w = self.row(y).expect("row inside triangle");
                    for &d in &shifts {
                        out.push(w.lo + d);
                        out.push(w.hi + d);
                    }
                }
            }
            Axis::Y => {
                out.push(self.dy);
                out.push(self.dy + self.height());
                out.extend(self.overlap_row());
                for xs in [lo[0], hi[0]] {
                    for &d in &shifts {
                        out.push(self.dy + SQRT3 * (xs + d - self.dx));
                        out.push(self.dy + SQRT3 * (self.dx + self.a - xs + d));
                    }
                }
            }
            Axis::T => {}
        }
        out
    }

    fn edge_distance(&self, x: f64, y: f64, _t: f64) -> f64 {
        let v = self.vertices();
        let p = [x, y];
        let mut d = segment_distance(p, v[0], v[1])
            .min(segment_distance(p, v[1], v[2]))
            .min(segment_distance(p, v[2], v[0]));
        // A_y jumps across the base line to the right of the left vertex and
        // kinks at the apex row right of the apex.
        if x > self.dx - self.width {
            d = d.min((y - self.dy).abs());
        }
        if x > self.dx + 0.5 * self.a - self.width {
            d = d.min((y - self.dy - self.height()).abs());
        }
        d
    }

    fn mollified(&self, width: f64) -> Option<Arc<dyn FieldModel>> {
        Some(Arc::new(Triangle { width, ..*self }))
    }
}

/// Uniform disk of radius `R` centered at the origin, symmetric gauge.
///
/// The smoothed profile `B₀·S((R_eff − ρ)/w)` uses `R_eff² = R² − w²/20`,
/// which keeps the total flux at `B₀πR²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub b0: f64,
    pub r: f64,
    pub width: f64,
}

impl Disk {
    fn r_eff(&self) -> f64 {
        (self.r * self.r - self.width * self.width / 20.0).sqrt()
    }

    fn radii(&self) -> Vec<f64> {
        if self.width == 0.0 {
            vec![self.r]
        } else {
            let re = self.r_eff();
            vec![re - 0.5 * self.width, re + 0.5 * self.width]
        }
    }

    fn profile(&self, rho: f64) -> f64 {
        if self.width == 0.0 {
            if rho <= self.r {
                1.0
            } else {
                0.0
            }
        } else {
            smoothstep((self.r_eff() - rho) / self.width)
        }
    }

    /// `M(ρ) = ∫₀^ρ ρ′ B/B₀ dρ′`
    fn enclosed(&self, rho: f64) -> f64 {
        if self.width == 0.0 {
            return 0.5 * rho.min(self.r).powi(2);
        }
        let w = self.width;
        let b = self.r_eff() - 0.5 * w;
        if rho <= b {
            return 0.5 * rho * rho;
        }
        if rho >= b + w {
            return 0.5 * self.r * self.r;
        }
        let q = (rho - b) / w;
        let (q2, q3) = (q * q, q * q * q);
        let q4 = q2 * q2;
        0.5 * b * b
            + w * (b * (q - q3 + 0.5 * q4) + w * (0.5 * q2 - 0.75 * q4 + 0.4 * q4 * q))
    }
}

fn circle_crossings(radii: &[f64], fixed: &[f64], range: (f64, f64)) -> Vec<f64> {
    let mut out = Vec::new();
    for &rk in radii {
        for &s in fixed {
            if s.abs() < rk {
                let h = (rk * rk - s * s).sqrt();
                out.push(h);
                out.push(-h);
            }
        }
        if range.0 <= 0.0 && range.1 >= 0.0 {
            out.push(rk);
            out.push(-rk);
        }
    }
    out
}

impl FieldModel for Disk {
    fn potentials(&self, x: f64, y: f64, _t: f64) -> Potentials {
        let r2 = x * x + y * y;
        let k = if r2 < 1e-300 { 0.5 } else { self.enclosed(r2.sqrt()) / r2 };
        Potentials { ax: -self.b0 * k * y, ay: self.b0 * k * x, phi: 0.0 }
    }

    fn b_z(&self, x: f64, y: f64, _t: f64) -> Option<f64> {
        Some(self.b0 * self.profile((x * x + y * y).sqrt()))
    }

    fn e_field(&self, _x: f64, _y: f64, _t: f64) -> Option<[f64; 2]> {
        Some([0.0, 0.0])
    }

    fn breaks(&self, axis: Axis, lo: [f64; 3], hi: [f64; 3]) -> Vec<f64> {
        match axis {
            Axis::X => circle_crossings(&self.radii(), &[lo[1], hi[1]], (lo[1], hi[1])),
            Axis::Y => circle_crossings(&self.radii(), &[lo[0], hi[0]], (lo[0], hi[0])),
            Axis::T => Vec::new(),
        }
    }

    fn radial_breaks(&self) -> Vec<f64> {
        self.radii()
    }

    fn edge_distance(&self, x: f64, y: f64, _t: f64) -> f64 {
        ((x * x + y * y).sqrt() - self.r).abs()
    }

    fn mollified(&self, width: f64) -> Option<Arc<dyn FieldModel>> {
        Some(Arc::new(Disk { width, ..*self }))
    }
}

/// Infinitely thin solenoid at the origin carrying flux Φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solenoid {
    pub flux: f64,
}

impl FieldModel for Solenoid {
    fn potentials(&self, x: f64, y: f64, _t: f64) -> Potentials {
        let k = self.flux / (2.0 * PI * (x * x + y * y));
        Potentials { ax: -k * y, ay: k * x, phi: 0.0 }
    }

    fn b_z(&self, _x: f64, _y: f64, _t: f64) -> Option<f64> {
        Some(0.0)
    }

    fn e_field(&self, _x: f64, _y: f64, _t: f64) -> Option<[f64; 2]> {
        Some([0.0, 0.0])
    }

    fn flux_lines(&self, _t: f64) -> Vec<FluxLine> {
        vec![FluxLine { x: 0.0, y: 0.0, flux: self.flux }]
    }

    fn edge_distance(&self, x: f64, y: f64, _t: f64) -> f64 {
        x.hypot(y)
    }
}

/// Parallel-plate capacitor: uniform `E_x = E₀` for `x ∈ [lo, hi]`, all t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capacitor {
    pub e0: f64,
    pub window: Window,
    /// Use `A_x = −c E₀ t 1_plates(x)`, `φ = 0` instead of the scalar ramp.
    pub temporal_gauge: bool,
    pub c: f64,
}

impl FieldModel for Capacitor {
    fn potentials(&self, x: f64, _y: f64, t: f64) -> Potentials {
        if self.temporal_gauge {
            Potentials { ax: -self.c * self.e0 * t * self.window.value(x), ay: 0.0, phi: 0.0 }
        } else {
            Potentials { ax: 0.0, ay: 0.0, phi: -self.e0 * self.window.ramp(x) }
        }
    }

    fn b_z(&self, _x: f64, _y: f64, _t: f64) -> Option<f64> {
        Some(0.0)
    }

    fn e_field(&self, x: f64, _y: f64, _t: f64) -> Option<[f64; 2]> {
        Some([self.e0 * self.window.value(x), 0.0])
    }

    fn breaks(&self, axis: Axis, _lo: [f64; 3], _hi: [f64; 3]) -> Vec<f64> {
        match axis {
            Axis::X => self.window.breaks(),
            _ => Vec::new(),
        }
    }

    fn edge_distance(&self, x: f64, _y: f64, _t: f64) -> f64 {
        self.window.edge_distance(x)
    }

    fn mollified(&self, width: f64) -> Option<Arc<dyn FieldModel>> {
        Some(Arc::new(Capacitor { window: Window { width, ..self.window }, ..*self }))
    }
}

/// Spatially uniform `E_x = E₀` switched on for `t ∈ [0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulsedUniformE {
    pub e0: f64,
    pub window: Window,
}

impl FieldModel for PulsedUniformE {
    fn potentials(&self, x: f64, _y: f64, t: f64) -> Potentials {
        Potentials { ax: 0.0, ay: 0.0, phi: -self.e0 * x * self.window.value(t) }
    }

    fn b_z(&self, _x: f64, _y: f64, _t: f64) -> Option<f64> {
        Some(0.0)
    }

    fn e_field(&self, _x: f64, _y: f64, t: f64) -> Option<[f64; 2]> {
        Some([self.e0 * self.window.value(t), 0.0])
    }

    fn breaks(&self, axis: Axis, _lo: [f64; 3], _hi: [f64; 3]) -> Vec<f64> {
        match axis {
            Axis::T => self.window.breaks(),
            _ => Vec::new(),
        }
    }

    fn edge_distance(&self, _x: f64, _y: f64, t: f64) -> f64 {
        self.window.edge_distance(t)
    }

    fn mollified(&self, width: f64) -> Option<Arc<dyn FieldModel>> {
        Some(Arc::new(PulsedUniformE { window: Window { width, ..self.window }, ..*self }))
    }
}

/// Angular sector `|θ − center| < half_width` carrying a normalized bump
/// `W(θ) ∝ (1 − s²)²` with `∫W dθ = 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wedge {
    pub center: f64,
    pub half_width: f64,
}

impl Wedge {
    fn offset(&self, theta: f64) -> f64 {
        (theta - self.center + PI).rem_euclid(2.0 * PI) - PI
    }

    pub fn weight(&self, theta: f64) -> f64 {
        let s = self.offset(theta) / self.half_width;
        if s.abs() >= 1.0 {
            return 0.0;
        }
        let u = 1.0 - s * s;
        2.0 * PI * 15.0 / (16.0 * self.half_width) * u * u
    }

    fn rays(&self) -> [f64; 2] {
        [self.center - self.half_width, self.center + self.half_width]
    }
}

/// Time-dependent flux line at the origin in the temporal gauge `φ = 0`.
///
/// Unshielded: `A = (Φ(t)/2π)∇θ`, `E = −(Φ′(t)/2πc)∇θ`.
/// With a wedge the induced part of A (and hence all of E) is confined to the
/// sector, so observation paths outside it see no electric field while the
/// loop integral of A still equals Φ(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VanKampen {
    pub profile: FluxProfile,
    pub wedge: Option<Wedge>,
    pub c: f64,
}

impl VanKampen {
    fn weight(&self, x: f64, y: f64) -> f64 {
        self.wedge.map_or(1.0, |w| w.weight(y.atan2(x)))
    }
}

impl FieldModel for VanKampen {
    fn potentials(&self, x: f64, y: f64, t: f64) -> Potentials {
        let phi_t = self.profile.value(t);
        let strength = match self.wedge {
            None => phi_t,
            Some(_) => {
                let phi_r = self.profile.value(self.profile.reference_time());
                phi_r + (phi_t - phi_r) * self.weight(x, y)
            }
        };
        let k = strength / (2.0 * PI * (x * x + y * y));
        Potentials { ax: -k * y, ay: k * x, phi: 0.0 }
    }

    fn b_z(&self, _x: f64, _y: f64, _t: f64) -> Option<f64> {
        Some(0.0)
    }

    fn e_field(&self, x: f64, y: f64, t: f64) -> Option<[f64; 2]> {
        let k = -self.profile.derivative(t) * self.weight(x, y)
            / (2.0 * PI * self.c * (x * x + y * y));
        Some([-k * y, k * x])
    }

    fn breaks(&self, axis: Axis, lo: [f64; 3], hi: [f64; 3]) -> Vec<f64> {
        let Some(w) = self.wedge else { return Vec::new() };
        let mut out = Vec::new();
        for th in w.rays() {
            let (s, c) = th.sin_cos();
            match axis {
                Axis::X => {
                    for y in [lo[1], hi[1]] {
                        if s.abs() > 1e-12 && y / s > 0.0 {
                            out.push(y / s * c);
                        }
                    }
                }
                Axis::Y => {
                    for x in [lo[0], hi[0]] {
                        if c.abs() > 1e-12 && x / c > 0.0 {
                            out.push(x / c * s);
                        }
                    }
                }
                Axis::T => {}
            }
        }
        out
    }

    fn flux_lines(&self, t: f64) -> Vec<FluxLine> {
        vec![FluxLine { x: 0.0, y: 0.0, flux: self.profile.value(t) }]
    }

    fn edge_distance(&self, x: f64, y: f64, _t: f64) -> f64 {
        let rho = x.hypot(y);
        let Some(w) = self.wedge else { return rho };
        w.rays().iter().fold(rho, |d, &th| {
            let (s, c) = th.sin_cos();
            let along = x * c + y * s;
            d.min(if along > 0.0 { (x * s - y * c).abs() } else { rho })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_enclosed_matches_quadrature() {
        let d = Disk { b0: 1.0, r: 1.0, width: 0.2 };
        let n = 200_000;
        let mut acc = 0.0;
        let top = 1.3;
        let h = top / n as f64;
        for i in 0..n {
            let r = (i as f64 + 0.5) * h;
            acc += r * d.profile(r) * h;
            if i % 20_000 == 0 {
                assert!((acc - d.enclosed(r + 0.5 * h)).abs() < 1e-6);
            }
        }
        assert!((d.enclosed(top) - 0.5).abs() < 1e-15);
        assert!((acc - 0.5).abs() < 1e-8);
    }

    #[test]
    fn wedge_weight_normalized() {
        let w = Wedge { center: PI, half_width: PI / 6.0 };
        let n = 100_000;
        let s: f64 = (0..n)
            .map(|i| w.weight(-PI + 2.0 * PI * (i as f64 + 0.5) / n as f64))
            .sum::<f64>()
            * 2.0
            * PI
            / n as f64;
        assert!((s - 2.0 * PI).abs() < 1e-8);
        assert_eq!(w.weight(0.0), 0.0);
    }

    #[test]
    fn triangle_chords_survive_mollification() {
        let sharp = Triangle { b0: 1.0, a: 1.0, dx: 0.0, dy: 0.0, width: 0.0 };
        let soft = Triangle { width: 0.1, ..sharp };
        for &y in &[0.05, 0.3, 0.6, 0.8] {
            let far = 5.0;
            assert!((sharp.potentials(far, y, 0.0).ay - soft.potentials(far, y, 0.0).ay).abs()
                < 1e-14);
        }
    }
}
