//! Deterministic quadrature and finite differences.
//!
//! Every integral in the gauge solvers reduces to one of three shapes:
//!
//! ```text
//!   ∫ₐᵇ f(s) ds                      integrate_1d
//!   ∫_{y₀}^{y} dy′ ∫_{x₀}^{x} dx′ f   integrate_rect (inner x′, outer y′)
//!   Σ_segments ∫ v·dr                 line_integral  (axis-aligned polylines)
//! ```
//!
//! Integrands with kinks or jumps should be split at their known breakpoints;
//! [`BreakHints`] carries those locations into the nested integrals.

mod diff;
mod grid;
mod quad;

pub use diff::{central_diff, try_central_diff, FdScheme, FdSpec};
pub use grid::{AxisRange, GridSpec};
pub use quad::{
    integrate_1d, integrate_1d_with_breaks, integrate_rect, integrate_rect_reversed_with,
    integrate_rect_with, line_integral, line_integral_with, BreakHints, NoBreaks, QuadratureMethod,
    QuadratureSpec, Rect,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("quadrature did not converge: estimate {estimate:.6e}, error bound {error_bound:.3e}")]
    NonConvergence { estimate: f64, error_bound: f64 },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("invalid numerics settings: {0}")]
    InvalidSpec(String),
}
