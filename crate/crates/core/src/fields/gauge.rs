//! Pure-gauge shifts `A → A + ∇χ`, `φ → φ − (1/c) ∂χ/∂t`; B and E are unchanged.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Axis, FieldModel, FluxLine, Potentials};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gauge", rename_all = "kebab-case")]
pub enum PureGauge {
    /// χ = a_x·x + a_y·y, a constant vector potential over all space.
    ConstantA { ax: f64, ay: f64 },
    /// χ = ε sin(k_x x + p_x) sin(k_y y + p_y) cos(ω t + p_t)
    Harmonic { amplitude: f64, kx: f64, ky: f64, omega: f64, px: f64, py: f64, pt: f64 },
}

impl PureGauge {
    /// Harmonic dressing with fixed incommensurate wave numbers.
    pub fn harmonic(amplitude: f64) -> Self {
        PureGauge::Harmonic { amplitude, kx: 2.1, ky: 1.7, omega: 1.3, px: 0.3, py: 0.5, pt: 0.2 }
    }

    pub fn chi(&self, x: f64, y: f64, t: f64) -> f64 {
        match *self {
            PureGauge::ConstantA { ax, ay } => ax * x + ay * y,
            PureGauge::Harmonic { amplitude, kx, ky, omega, px, py, pt } => {
                amplitude * (kx * x + px).sin() * (ky * y + py).sin() * (omega * t + pt).cos()
            }
        }
    }

    /// `(∂χ/∂x, ∂χ/∂y, ∂χ/∂t)`
    pub fn gradient(&self, x: f64, y: f64, t: f64) -> [f64; 3] {
        match *self {
            PureGauge::ConstantA { ax, ay } => [ax, ay, 0.0],
            PureGauge::Harmonic { amplitude, kx, ky, omega, px, py, pt } => {
                let (sx, cx) = (kx * x + px).sin_cos();
                let (sy, cy) = (ky * y + py).sin_cos();
                let (st, ct) = (omega * t + pt).sin_cos();
                [
                    amplitude * kx * cx * sy * ct,
                    amplitude * ky * sx * cy * ct,
                    -amplitude * omega * sx * sy * st,
                ]
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct GaugeDressed {
    inner: Arc<dyn FieldModel>,
    chi: PureGauge,
    c: f64,
}

impl GaugeDressed {
    pub fn new(inner: Arc<dyn FieldModel>, chi: PureGauge, c: f64) -> Self {
        Self { inner, chi, c }
    }
}

impl FieldModel for GaugeDressed {
    fn potentials(&self, x: f64, y: f64, t: f64) -> Potentials {
        let p = self.inner.potentials(x, y, t);
        let [gx, gy, gt] = self.chi.gradient(x, y, t);
        Potentials { ax: p.ax + gx, ay: p.ay + gy, phi: p.phi - gt / self.c }
    }

    fn b_z(&self, x: f64, y: f64, t: f64) -> Option<f64> {
        self.inner.b_z(x, y, t)
    }

    fn e_field(&self, x: f64, y: f64, t: f64) -> Option<[f64; 2]> {
        self.inner.e_field(x, y, t)
    }

    fn breaks(&self, axis: Axis, lo: [f64; 3], hi: [f64; 3]) -> Vec<f64> {
        self.inner.breaks(axis, lo, hi)
    }

    fn radial_breaks(&self) -> Vec<f64> {
        self.inner.radial_breaks()
    }

    fn flux_lines(&self, t: f64) -> Vec<FluxLine> {
        self.inner.flux_lines(t)
    }

    fn edge_distance(&self, x: f64, y: f64, t: f64) -> f64 {
        self.inner.edge_distance(x, y, t)
    }

    fn mollified(&self, width: f64) -> Option<Arc<dyn FieldModel>> {
        self.inner
            .mollified(width)
            .map(|m| Arc::new(GaugeDressed::new(m, self.chi, self.c)) as Arc<dyn FieldModel>)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_matches_finite_differences() {
        let g = PureGauge::harmonic(0.5);
        let h = 1e-6;
        let (x, y, t) = (0.4, -1.1, 0.8);
        let grad = g.gradient(x, y, t);
        let fd = [
            (g.chi(x + h, y, t) - g.chi(x - h, y, t)) / (2.0 * h),
            (g.chi(x, y + h, t) - g.chi(x, y - h, t)) / (2.0 * h),
            (g.chi(x, y, t + h) - g.chi(x, y, t - h)) / (2.0 * h),
        ];
        for k in 0..3 {
            assert!((grad[k] - fd[k]).abs() < 1e-8);
        }
    }
}
