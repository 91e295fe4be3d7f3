//! Scattering diagnostics: free profiles `S(−t)(u(t), u_t(t))`, their Cauchy
//! defects, exterior-cone and tail `L⁴_{t,x}` norms.

mod profile;
mod report;

pub use profile::{cauchy_defect, exterior_cone_norm, scatter_profile};
pub use report::{
    l4_accumulation, l4_accumulation_with, DyadicDefect, ScatterConfig, ScatterReport,
};
