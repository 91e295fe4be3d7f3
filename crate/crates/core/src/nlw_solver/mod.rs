//! Time integration of the cubic equation and of the Fourier-truncation
//! coupled system.

mod config;
mod evolve;
mod split;
mod stepper;

pub use config::{Scheme, SolverConfig, SplitConfig};
pub use evolve::{evolve, evolve_coupled, SUPPORT_REL_TOL};
pub use split::{split_initial_data, SplitReport};
pub(crate) use stepper::check_finite;
pub use stepper::{step, Stepper};
