//! Conserved, monotone and bounded quantities: energies, Morawetz potentials,
//! the virial identity, Morawetz spacetime bounds, the modified energy and the
//! energy growth fit.

mod bounds;
mod config;
mod growth;
mod kernels;
mod record;
mod virial;

pub use bounds::{bound_ratios, dyadic_radii, BoundReport};
pub use config::{MonitorConfig, MorawetzCutoff};
pub use growth::{growth_fit, growth_fit_series, GrowthFit, GROWTH_MIN_SAMPLES};
pub use kernels::{ball_distance_gradient, ball_newton_potential};
pub use record::{
    energy, modified_energy, morawetz_m1_u_route, morawetz_potential, DiagnosticsRecord, Monitor,
    MorawetzKind, StateSpectra,
};
pub use virial::{virial_residual, IdentityReport, VIRIAL_ABS_TOL, VIRIAL_REL_TOL};
