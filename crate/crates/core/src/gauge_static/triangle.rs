//! Closed-form brackets of the equilateral-triangle flux and the placement fit.
//!
//! With the observation corner to the right of the apex and above the apex of
//! the clipped right-hand corner, the printed brackets are
//!
//! ```text
//!   g(x) = B₀ [ −(√3 a x − (√3/2) x²) + (√3/4) a² ]
//!   h(y) = B₀ [ (a y − y²/√3) − (√3/4) a² ]
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{separable_brackets, GaugeError};
use crate::fields::{build_field, Constants, FieldDifference, ScenarioConfig, ScenarioKind};
use crate::numerics::{AxisRange, GridSpec, QuadratureMethod, QuadratureSpec};
use crate::plane::{self, StaticPlane};

const SQRT3: f64 = 1.732_050_807_568_877_2;

pub fn printed_g(x: f64, a: f64, b0: f64) -> f64 {
    b0 * (-(SQRT3 * a * x - 0.5 * SQRT3 * x * x) + 0.25 * SQRT3 * a * a)
}

pub fn printed_h(y: f64, a: f64, b0: f64) -> f64 {
    b0 * ((a * y - y * y / SQRT3) - 0.25 * SQRT3 * a * a)
}

/// Observation window, in units of `a`, where the printed forms apply for the
/// default placement: x ∈ [0.75a, 0.95a], y ∈ [0.5a, 0.85a].
pub fn triangle_window(a: f64, n: usize) -> Result<GridSpec, GaugeError> {
    Ok(GridSpec::new(vec![
        AxisRange::new(0.75 * a, 0.95 * a, n)?,
        AxisRange::new(0.5 * a, 0.85 * a, n)?,
    ])?)
}

/// Result of matching extracted brackets against the printed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlacementFit {
    pub offset: [f64; 2],
    /// Max deviation of g from `printed_g` after fitting one constant.
    pub g_deviation: f64,
    pub h_deviation: f64,
    pub tolerance: f64,
    pub matched: bool,
}

/// Constant-fitted deviation of the extracted (g, h) from the printed forms.
pub fn closed_form_deviation(
    field: &FieldDifference,
    window: &GridSpec,
    base: [f64; 2],
    a: f64,
    b0: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), GaugeError> {
    let pl = Arc::new(StaticPlane { field: field.clone(), t: 0.0 });
    let (g, h) = separable_brackets(pl, window, base, spec, ("g(x)", "h(y)"))?;
    let gd: Vec<f64> = window.axes[0]
        .values()
        .into_iter()
        .map(|x| Ok(g.eval(x)? - printed_g(x, a, b0)))
        .collect::<Result<_, GaugeError>>()?;
    let hd: Vec<f64> = window.axes[1]
        .values()
        .into_iter()
        .map(|y| Ok(h.eval(y)? - printed_h(y, a, b0)))
        .collect::<Result<_, GaugeError>>()?;
    Ok((plane::midrange(&gd).1, plane::midrange(&hd).1))
}

/// Translates the triangle over `candidates × candidates` (in units of `a`) and
/// returns every fit, best first. Placements whose flux does not separate over
/// the window are reported with infinite deviation.
pub fn fit_triangle_placement(
    a: f64,
    b0: f64,
    candidates: &[f64],
    window: &GridSpec,
    base: [f64; 2],
) -> Result<Vec<PlacementFit>, GaugeError> {
    let spec = QuadratureSpec::default().with_method(QuadratureMethod::CompositeGaussLegendre);
    let tolerance = 1e-6 * b0.abs() * a * a;
    let mut fits = Vec::new();
    for &dx in candidates {
        for &dy in candidates {
            let offset = [dx * a, dy * a];
            let cfg = ScenarioConfig::new(ScenarioKind::TriangleB)
                .with("a", a)
                .and_then(|c| c.with("b0", b0))
                .and_then(|c| c.with("offset_x", offset[0]))
                .and_then(|c| c.with("offset_y", offset[1]))
                .map_err(|e| GaugeError::InvalidWindow(e.to_string()))?;
            let field = build_field(&cfg, Constants::default())
                .map_err(|e| GaugeError::InvalidWindow(e.to_string()))?;
            let (g_deviation, h_deviation) =
                match closed_form_deviation(&field, window, base, a, b0, &spec) {
                    Ok(d) => d,
                    Err(GaugeError::Separability { .. }) => (f64::INFINITY, f64::INFINITY),
                    Err(e) => return Err(e),
                };
            fits.push(PlacementFit {
                offset,
                g_deviation,
                h_deviation,
                tolerance,
                matched: g_deviation <= tolerance && h_deviation <= tolerance,
            });
        }
    }
    fits.sort_by(|p, q| {
        p.g_deviation.max(p.h_deviation).total_cmp(&q.g_deviation.max(q.h_deviation))
    });
    Ok(fits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_forms_have_the_expected_curvature() {
        let (a, b0, d) = (1.3, 0.7, 1e-3);
        let g2 = (printed_g(0.5 + d, a, b0) - 2.0 * printed_g(0.5, a, b0) + printed_g(0.5 - d, a, b0))
            / (d * d);
        let h2 = (printed_h(0.5 + d, a, b0) - 2.0 * printed_h(0.5, a, b0) + printed_h(0.5 - d, a, b0))
            / (d * d);
        assert!((g2 - SQRT3 * b0).abs() < 1e-6);
        assert!((h2 + 2.0 * b0 / SQRT3).abs() < 1e-6);
    }

    #[test]
    fn origin_placement_matches() {
        let w = triangle_window(1.0, 5).unwrap();
        let fits = fit_triangle_placement(1.0, 1.0, &[-0.25, 0.0, 0.25], &w, [0.0, 0.0]).unwrap();
        assert!(fits[0].matched, "{:?}", fits[0]);
        assert_eq!(fits[0].offset, [0.0, 0.0]);
        assert_eq!(fits.iter().filter(|f| f.matched).count(), 1);
    }
}
