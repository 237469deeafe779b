use serde::{Deserialize, Serialize};

use super::NumericsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FdScheme {
    Central2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdSpec {
    pub scheme: FdScheme,
    pub step: f64,
}

impl FdSpec {
    pub fn new(step: f64) -> Result<Self, NumericsError> {
        if !(step.is_finite() && step > 0.0) {
            return Err(NumericsError::InvalidSpec(format!("fd step must be > 0, got {step}")));
        }
        Ok(Self { scheme: FdScheme::Central2, step })
    }

    /// Default step for an axis of characteristic length `scale`.
    pub fn for_scale(scale: f64) -> Self {
        Self { scheme: FdScheme::Central2, step: 1e-4 * scale.abs().max(f64::MIN_POSITIVE) }
    }

    pub fn halved(&self) -> Self {
        Self { step: 0.5 * self.step, ..*self }
    }
}

impl Default for FdSpec {
    fn default() -> Self {
        Self::for_scale(1.0)
    }
}

/// Second-order central difference along `axis`.
///
/// The quotient uses the realized spacing `(p + h) − (p − h)` so the
/// representation error of the shifted abscissae does not enter the slope.
pub fn central_diff<F>(f: F, point: &[f64], axis: usize, fd: &FdSpec) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    match try_central_diff(|p| Ok::<f64, std::convert::Infallible>(f(p)), point, axis, fd) {
        Ok(v) => v,
        Err(e) => match e {},
    }
}

pub fn try_central_diff<F, E>(f: F, point: &[f64], axis: usize, fd: &FdSpec) -> Result<f64, E>
where
    F: Fn(&[f64]) -> Result<f64, E>,
{
    let mut p = point.to_vec();
    let x = point[axis];
    let (xp, xm) = (x + fd.step, x - fd.step);
    p[axis] = xp;
    let fp = f(&p)?;
    p[axis] = xm;
    let fm = f(&p)?;
    Ok((fp - fm) / (xp - xm))
}
