//! Field differences `(A, φ) = (A₂ − A₁, φ₂ − φ₁)` and their derived fields.
//!
//! Units are Gaussian with the speed of light kept explicit:
//!
//! ```text
//!   B_z = ∂A_y/∂x − ∂A_x/∂y
//!   E   = −∇φ − (1/c) ∂A/∂t
//! ```
//!
//! A [`FieldDifference`] wraps a [`FieldModel`] (the samplers) together with
//! the [`Constants`]. Models may supply analytic `B_z`/`E`; otherwise both are
//! obtained from central differences of the potentials.

mod catalog;
mod config;
mod gauge;
mod profile;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::{
    Capacitor, Disk, PulsedUniformE, Solenoid, Strip, StripOrientation, Triangle, VanKampen,
    Wedge,
};
pub use config::{build_field, ParamSpec, ScenarioConfig, ScenarioKind};
pub use gauge::{GaugeDressed, PureGauge};
pub use profile::{smoothstep, smoothstep_integral, FluxProfile, Window};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("unknown scenario kind `{0}`")]
    UnknownKind(String),
    #[error("unknown parameter `{name}` for scenario kind `{kind}`")]
    UnknownParameter { kind: String, name: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub c: f64,
    pub q: f64,
    pub hbar: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self { c: 1.0, q: 1.0, hbar: 1.0 }
    }
}

impl Constants {
    pub fn new(c: f64, q: f64, hbar: f64) -> Result<Self, FieldError> {
        for (name, v) in [("c", c), ("q", q), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(FieldError::InvalidConfig(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(Self { c, q, hbar })
    }
}

/// `exp(i q Λ / ħc)` with the argument reduced to `(−π, π]`.
pub fn phase_factor(lambda_value: f64, constants: &Constants) -> Complex64 {
    let arg = constants.q * lambda_value / (constants.hbar * constants.c);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut theta = (arg + std::f64::consts::PI).rem_euclid(two_pi) - std::f64::consts::PI;
    if theta <= -std::f64::consts::PI {
        theta += two_pi;
    }
    Complex64::from_polar(1.0, theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    T,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::T => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Potentials {
    pub ax: f64,
    pub ay: f64,
    pub phi: f64,
}

/// Thin flux line perpendicular to the plane: zero field outside, flux `flux`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxLine {
    pub x: f64,
    pub y: f64,
    pub flux: f64,
}

/// Sampler interface behind a [`FieldDifference`].
pub trait FieldModel: Send + Sync + fmt::Debug {
    fn potentials(&self, x: f64, y: f64, t: f64) -> Potentials;

    /// Smooth part of `B_z`; flux lines are reported separately.
    fn b_z(&self, _x: f64, _y: f64, _t: f64) -> Option<f64> {
        None
    }

    fn e_field(&self, _x: f64, _y: f64, _t: f64) -> Option<[f64; 2]> {
        None
    }

    /// Kinks and jumps along `axis` for the other coordinates within `[lo, hi]`
    /// (coordinates ordered x, y, t; `lo[axis]`, `hi[axis]` are ignored).
    fn breaks(&self, _axis: Axis, _lo: [f64; 3], _hi: [f64; 3]) -> Vec<f64> {
        Vec::new()
    }

    /// Radii about the origin at which the field has kinks.
    fn radial_breaks(&self) -> Vec<f64> {
        Vec::new()
    }

    fn flux_lines(&self, _t: f64) -> Vec<FluxLine> {
        Vec::new()
    }

    /// Distance from `(x, y, t)` to the nearest edge of a field region or gauge seam.
    fn edge_distance(&self, _x: f64, _y: f64, _t: f64) -> f64 {
        f64::INFINITY
    }

    /// Edge-smoothed copy, or `None` when the model has no sharp edges.
    fn mollified(&self, _width: f64) -> Option<Arc<dyn FieldModel>> {
        None
    }
}

#[derive(Debug, Clone)]
pub struct FieldDifference {
    model: Arc<dyn FieldModel>,
    constants: Constants,
}

/// Relative step used when `B_z` or `E` must be differentiated numerically.
const FALLBACK_STEP: f64 = 1e-5;

impl FieldDifference {
    pub fn new(model: Arc<dyn FieldModel>, constants: Constants) -> Self {
        Self { model, constants }
    }

    pub fn zero(constants: Constants) -> Self {
        Self::new(Arc::new(CustomField::zero()), constants)
    }

    pub fn model(&self) -> &Arc<dyn FieldModel> {
        &self.model
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn c(&self) -> f64 {
        self.constants.c
    }

    pub fn with_constants(&self, constants: Constants) -> Self {
        Self { model: self.model.clone(), constants }
    }

    pub fn potentials(&self, x: f64, y: f64, t: f64) -> Potentials {
        self.model.potentials(x, y, t)
    }

    pub fn a(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        let p = self.model.potentials(x, y, t);
        [p.ax, p.ay]
    }

    pub fn a_x(&self, x: f64, y: f64, t: f64) -> f64 {
        self.model.potentials(x, y, t).ax
    }

    pub fn a_y(&self, x: f64, y: f64, t: f64) -> f64 {
        self.model.potentials(x, y, t).ay
    }

    pub fn phi(&self, x: f64, y: f64, t: f64) -> f64 {
        self.model.potentials(x, y, t).phi
    }

    /// Polar components `(A_ρ, A_φ)` by rotation of the Cartesian sampler.
    pub fn a_polar(&self, rho: f64, angle: f64, t: f64) -> [f64; 2] {
        let (s, c) = angle.sin_cos();
        let [ax, ay] = self.a(rho * c, rho * s, t);
        [c * ax + s * ay, -s * ax + c * ay]
    }

    pub fn b_z(&self, x: f64, y: f64, t: f64) -> f64 {
        self.model.b_z(x, y, t).unwrap_or_else(|| self.b_z_numeric(x, y, t))
    }

    pub fn b_z_numeric(&self, x: f64, y: f64, t: f64) -> f64 {
        let h = FALLBACK_STEP;
        let day_dx = (self.a_y(x + h, y, t) - self.a_y(x - h, y, t)) / (2.0 * h);
        let dax_dy = (self.a_x(x, y + h, t) - self.a_x(x, y - h, t)) / (2.0 * h);
        day_dx - dax_dy
    }

    pub fn e(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        self.model.e_field(x, y, t).unwrap_or_else(|| self.e_numeric(x, y, t))
    }

    pub fn e_x(&self, x: f64, y: f64, t: f64) -> f64 {
        self.e(x, y, t)[0]
    }

    pub fn e_y(&self, x: f64, y: f64, t: f64) -> f64 {
        self.e(x, y, t)[1]
    }

    pub fn e_numeric(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        let h = FALLBACK_STEP;
        let c = self.constants.c;
        let dphi_dx = (self.phi(x + h, y, t) - self.phi(x - h, y, t)) / (2.0 * h);
        let dphi_dy = (self.phi(x, y + h, t) - self.phi(x, y - h, t)) / (2.0 * h);
        let (ap, am) = (self.a(x, y, t + h), self.a(x, y, t - h));
        [
            -dphi_dx - (ap[0] - am[0]) / (2.0 * h * c),
            -dphi_dy - (ap[1] - am[1]) / (2.0 * h * c),
        ]
    }

    pub fn breaks(&self, axis: Axis, lo: [f64; 3], hi: [f64; 3]) -> Vec<f64> {
        self.model.breaks(axis, lo, hi)
    }

    pub fn radial_breaks(&self) -> Vec<f64> {
        self.model.radial_breaks()
    }

    pub fn flux_lines(&self, t: f64) -> Vec<FluxLine> {
        self.model.flux_lines(t)
    }

    pub fn edge_distance(&self, x: f64, y: f64, t: f64) -> f64 {
        self.model.edge_distance(x, y, t)
    }

    /// Replaces sharp region edges by smoothsteps of `width`.
    pub fn mollify(&self, width: f64) -> Result<Self, FieldError> {
        if !(width.is_finite() && width > 0.0) {
            return Err(FieldError::InvalidConfig(format!(
                "mollify width must be > 0, got {width}"
            )));
        }
        Ok(match self.model.mollified(width) {
            Some(model) => Self { model, constants: self.constants },
            None => self.clone(),
        })
    }

    /// Same physical fields, potentials shifted by the pure gauge `χ`.
    pub fn dressed(&self, chi: PureGauge) -> Self {
        let model = Arc::new(GaugeDressed::new(self.model.clone(), chi, self.constants.c));
        Self { model, constants: self.constants }
    }
}

type Sampler<T> = Arc<dyn Fn(f64, f64, f64) -> T + Send + Sync>;

/// Field difference assembled from closures; useful for ad-hoc configurations.
#[derive(Clone)]
pub struct CustomField {
    potentials: Sampler<Potentials>,
    b_z: Option<Sampler<f64>>,
    e: Option<Sampler<[f64; 2]>>,
    breaks: Vec<(Axis, f64)>,
    lines: Vec<FluxLine>,
}

impl fmt::Debug for CustomField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomField")
            .field("analytic_b_z", &self.b_z.is_some())
            .field("analytic_e", &self.e.is_some())
            .field("breaks", &self.breaks)
            .field("lines", &self.lines)
            .finish()
    }
}

impl CustomField {
    pub fn new(potentials: impl Fn(f64, f64, f64) -> Potentials + Send + Sync + 'static) -> Self {
        Self { potentials: Arc::new(potentials), b_z: None, e: None, breaks: vec![], lines: vec![] }
    }

    pub fn zero() -> Self {
        Self::new(|_, _, _| Potentials::default())
            .with_b_z(|_, _, _| 0.0)
            .with_e(|_, _, _| [0.0, 0.0])
    }

    pub fn with_b_z(mut self, b: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.b_z = Some(Arc::new(b));
        self
    }

    pub fn with_e(mut self, e: impl Fn(f64, f64, f64) -> [f64; 2] + Send + Sync + 'static) -> Self {
        self.e = Some(Arc::new(e));
        self
    }

    pub fn with_breaks(mut self, axis: Axis, at: &[f64]) -> Self {
        self.breaks.extend(at.iter().map(|&v| (axis, v)));
        self
    }

    pub fn with_flux_line(mut self, line: FluxLine) -> Self {
        self.lines.push(line);
        self
    }

    pub fn into_field(self, constants: Constants) -> FieldDifference {
        FieldDifference::new(Arc::new(self), constants)
    }
}

impl FieldModel for CustomField {
    fn potentials(&self, x: f64, y: f64, t: f64) -> Potentials {
        (self.potentials)(x, y, t)
    }

    fn b_z(&self, x: f64, y: f64, t: f64) -> Option<f64> {
        self.b_z.as_ref().map(|b| b(x, y, t))
    }

    fn e_field(&self, x: f64, y: f64, t: f64) -> Option<[f64; 2]> {
        self.e.as_ref().map(|e| e(x, y, t))
    }

    fn breaks(&self, axis: Axis, _lo: [f64; 3], _hi: [f64; 3]) -> Vec<f64> {
        self.breaks.iter().filter(|(a, _)| *a == axis).map(|(_, v)| *v).collect()
    }

    fn flux_lines(&self, _t: f64) -> Vec<FluxLine> {
        self.lines.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_factor_identities() {
        let k = Constants::default();
        let one = phase_factor(0.0, &k);
        assert_eq!((one.re, one.im), (1.0, 0.0));
        let half = phase_factor(std::f64::consts::PI, &k);
        assert!((half.re + 1.0).abs() < 1e-15 && half.im.abs() < 1e-15);
        assert!(half.arg() > 0.0);
        for n in -3..=3 {
            let p = phase_factor(2.0 * std::f64::consts::PI * n as f64, &k);
            assert!((p.re - 1.0).abs() < 1e-14 && p.im.abs() < 1e-14);
        }
        let scaled = Constants::new(2.0, 3.0, 0.5).unwrap();
        let p = phase_factor(0.1, &scaled);
        assert!((p.arg() - 0.3).abs() < 1e-15);
        assert!((p.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constants_must_be_positive() {
        assert!(Constants::new(0.0, 1.0, 1.0).is_err());
        assert!(Constants::new(1.0, -1.0, 1.0).is_err());
        assert!(Constants::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn numeric_derivatives_of_custom_field() {
        let f = CustomField::new(|x, y, t| Potentials { ax: -y * t, ay: x * x, phi: x * y })
            .into_field(Constants::new(2.0, 1.0, 1.0).unwrap());
        // B_z = 2x + t, E = (−y + y/2, −x)
        let b = f.b_z(0.7, 0.2, 0.4);
        assert!((b - (1.4 + 0.4)).abs() < 1e-8);
        let e = f.e(0.7, 0.2, 0.4);
        assert!((e[0] - (-0.2 + 0.1)).abs() < 1e-8);
        assert!((e[1] + 0.7).abs() < 1e-8);
    }

    #[test]
    fn polar_rotation() {
        let f = CustomField::new(|x, y, _| Potentials { ax: -y, ay: x, phi: 0.0 })
            .into_field(Constants::default());
        let [ar, ap] = f.a_polar(2.0, 0.9, 0.0);
        assert!(ar.abs() < 1e-15);
        assert!((ap - 2.0).abs() < 1e-15);
    }
}
