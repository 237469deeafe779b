//! Nonlocal gauge functions relating two electromagnetic potentials that share
//! the same fields away from a confined region.
//!
//! - [`fields`]: potential differences, the scenario catalog and configuration.
//! - [`numerics`]: quadrature, differences and grids.
//! - [`gauge_static`]: the static solutions Λ(x, y).
//! - [`gauge_spacetime`]: the (x, t) and (x, y, t) solutions and the van Kampen difference.
//! - [`verify`]: PDE residual sweeps and cancellation checks.
//! - [`scenarios`]: the scenario registry, check runner and report output.

pub mod fields;
pub mod gauge_spacetime;
pub mod gauge_static;
pub mod numerics;
mod plane;
pub mod scenarios;
pub mod verify;
