//! Radial defocusing cubic wave equation `u_tt − Δu + u³ = 0` on `R^{1+3}`:
//! spectral representation, exact free flow, Strang integration, monitored
//! identities, hyperbolic coordinates and scattering diagnostics.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! `f64`, the precision all tolerances are stated in.

// Comparisons are written so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hyperbolic;
pub mod linear_prop;
pub mod monitors;
pub mod nlw_solver;
mod quadrature;
pub mod radial_field;
pub mod scalar;
pub mod scattering;

pub use error::{NlwError, Result};
pub use scalar::Real;

pub type Grid = radial_field::RadialGrid<f64>;
pub type Field = radial_field::RadialField<f64>;
pub type State = radial_field::FieldState<f64>;
pub type Spectral = radial_field::SpectralField<f64>;
pub type Traj = linear_prop::Trajectory<f64>;
pub type Record = monitors::DiagnosticsRecord<f64>;
pub type Monitors = monitors::MonitorConfig<f64>;
pub type Solver = nlw_solver::SolverConfig<f64>;
pub type Split = nlw_solver::SplitConfig<f64>;
pub type HGrid = hyperbolic::HyperbolicGrid<f64>;
pub type HState = hyperbolic::HyperbolicState<f64>;
pub type HTraj = hyperbolic::HyperbolicTrajectory<f64>;
