//! Radial grids and fields, the sine-series representation, Sobolev norms and
//! Littlewood–Paley projections.
//!
//! A radial function `u(r)` on `R³` is stored through `φ = r·u`, which turns
//! the radial Laplacian into `∂_rr` with Dirichlet conditions at `r = 0` and
//! `r = r_max`. The sine basis diagonalizes it.

mod field;
mod grid;
mod lp;
mod norms;
mod transform;

pub use field::{
    from_spectral, reduced_derivative, to_spectral, FieldState, RadialField, SpectralField,
};
pub use grid::{make_grid, RadialGrid, MIN_NODES};
pub use lp::{
    apply_multiplier, lp_project, lp_project_spectral, smooth_step, BumpProfile, LpConfig,
    ProjectionKind,
};
pub use norms::{
    critical_norm, hs_norm, hs_norm_sq_coeff, l4_norm_pow4, lp_norm_pow, sobolev_norm,
    sobolev_norm_with, weighted_l4, SOBOLEV_MAX, SOBOLEV_MIN,
};
pub use transform::SineTransform;
