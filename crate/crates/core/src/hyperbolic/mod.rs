//! Hyperbolic coordinates `t = t0·e^τ cosh s`, `r = t0·e^τ sinh s` inside the
//! forward light cone: sampling of standard trajectories on hyperboloids,
//! native evolution of the transformed equation, and its conserved energy.

mod change;
mod evolve;
mod grid;
mod transform;

pub use change::{change_of_variables_check, ChangeOfVariables};
pub use evolve::{evolve_hyperbolic, hyperbolic_energy, HyperbolicConfig, HyperbolicTrajectory};
pub use grid::{hyperbolic_weight, HyperbolicGrid, HyperbolicState, WEIGHT_SERIES_CUTOFF};
pub use transform::{
    hyperboloid_data, to_hyperbolic, to_hyperbolic_with, HyperbolicFrame, Interpolation,
    CHAIN_RULE_FORMULA,
};
