//! Polar-coordinate solutions about the origin.
//!
//! ```text
//!   Λ₁ = ∫_{ρ₀}^{ρ} A_ρ(ρ′, φ) dρ′ + ∫_{φ₀}^{φ} ρ₀ A_φ(ρ₀, φ′) dφ′ + { ∬ ρ′ B_z + g(ρ) } + f(φ₀)
//!   Λ₂ = ∫_{ρ₀}^{ρ} A_ρ(ρ′, φ₀) dρ′ + ∫_{φ₀}^{φ} ρ A_φ(ρ, φ′) dφ′ + { −∬ ρ′ B_z + h(φ) } + ĥ(ρ₀)
//! ```
//!
//! with `∬ = ∫_{φ₀}^{φ} dφ′ ∫_{ρ₀}^{ρ} dρ′`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{separable_brackets, BracketSet2D, GaugeError, GaugeValue};
use crate::fields::FieldDifference;
use crate::numerics::{GridSpec, QuadratureSpec};
use crate::plane::{self, PolarPlane};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub rho: f64,
    pub angle: f64,
}

impl PolarPoint {
    pub fn new(rho: f64, angle: f64) -> Self {
        Self { rho, angle }
    }

    pub fn to_cartesian(self) -> [f64; 2] {
        let (s, c) = self.angle.sin_cos();
        [self.rho * c, self.rho * s]
    }

    fn uv(self) -> [f64; 2] {
        [self.rho, self.angle]
    }
}

fn check(base: PolarPoint, corner: PolarPoint) -> Result<(), GaugeError> {
    if !(base.rho > 0.0 && corner.rho > 0.0) {
        return Err(GaugeError::Degenerate(format!(
            "polar paths need rho > 0, got rho0 = {}, rho = {}",
            base.rho, corner.rho
        )));
    }
    Ok(())
}

pub fn enclosed_flux_polar(
    field: &FieldDifference,
    base: PolarPoint,
    corner: PolarPoint,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GaugeError> {
    check(base, corner)?;
    plane::enclosed(&PolarPlane { field: field.clone(), t }, base.uv(), corner.uv(), spec)
}

/// Polar analog of [`super::select_brackets`]; `window` spans (ρ, φ).
pub fn select_brackets_polar(
    field: &FieldDifference,
    window: &GridSpec,
    base: PolarPoint,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<BracketSet2D, GaugeError> {
    let pl = Arc::new(PolarPlane { field: field.clone(), t });
    let (g, h) = separable_brackets(pl, window, base.uv(), spec, ("g(rho)", "h(phi)"))?;
    Ok(BracketSet2D { g, h, f_y0: 0.0, hhat_x0: 0.0, constant: 0.0 })
}

pub fn lambda_polar1(
    field: &FieldDifference,
    base: PolarPoint,
    corner: PolarPoint,
    t: f64,
    brackets: &BracketSet2D,
    spec: &QuadratureSpec,
) -> Result<GaugeValue, GaugeError> {
    check(base, corner)?;
    let pl = PolarPlane { field: field.clone(), t };
    let dirac = plane::path_cw(&pl, base.uv(), corner.uv(), spec)?;
    let nonlocal = plane::enclosed(&pl, base.uv(), corner.uv(), spec)?;
    let bracket = brackets.g.eval(corner.rho)? + brackets.constant;
    Ok(GaugeValue::new(dirac, nonlocal, bracket, brackets.f_y0))
}

pub fn lambda_polar2(
    field: &FieldDifference,
    base: PolarPoint,
    corner: PolarPoint,
    t: f64,
    brackets: &BracketSet2D,
    spec: &QuadratureSpec,
) -> Result<GaugeValue, GaugeError> {
    check(base, corner)?;
    let pl = PolarPlane { field: field.clone(), t };
    let dirac = plane::path_ccw(&pl, base.uv(), corner.uv(), spec)?;
    let nonlocal = -plane::enclosed(&pl, base.uv(), corner.uv(), spec)?;
    let bracket = brackets.h.eval(corner.angle)? + brackets.constant;
    Ok(GaugeValue::new(dirac, nonlocal, bracket, brackets.hhat_x0))
}
