//! Exact free evolution, the radial d'Alembert formula, trajectories and
//! spacetime norms.

mod dalembert;
mod propagator;
mod strichartz;
mod trajectory;

pub use dalembert::dalembert_oracle;
pub use propagator::{free_evolve, DriftTable, FreePropagator};
pub use strichartz::{l2_linf_norm, spacetime_l4_pow4, strichartz_l4, sup_norm_outside};
pub(crate) use trajectory::trapezoid_in_time;
pub use trajectory::{Trajectory, TrajectoryMeta};
