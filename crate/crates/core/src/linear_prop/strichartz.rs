use super::trajectory::{trapezoid_in_time, Trajectory};
use crate::error::{NlwError, Result};
use crate::radial_field::{l4_norm_pow4, RadialField};
use crate::scalar::Real;

/// `∫∫ u⁴ dx dt` over the stored time range.
pub fn spacetime_l4_pow4<T: Real>(traj: &Trajectory<T>) -> T {
    let times = traj.times();
    let vals: Vec<T> = traj.states().iter().map(|s| l4_norm_pow4(&s.u)).collect();
    trapezoid_in_time(&times, &vals)
}

/// `‖u‖_{L⁴_{t,x}} = (∫∫ u⁴ 4πr² dr dt)^{1/4}`.
pub fn strichartz_l4<T: Real>(traj: &Trajectory<T>) -> T {
    spacetime_l4_pow4(traj).powf(T::lit(0.25))
}

/// `sup_{r ≥ r_min} |u(r)|` over the nodes; the origin value `u(0)` enters
/// only when `r_min = 0`.
pub fn sup_norm_outside<T: Real>(f: &RadialField<T>, r_min: T) -> T {
    let g = f.grid();
    let mut m = if r_min <= T::zero() {
        f.u_at_origin().abs()
    } else {
        T::zero()
    };
    for (i, &p) in f.phi().iter().enumerate() {
        let r = g.node(i);
        if r >= r_min {
            m = m.max((p / r).abs());
        }
    }
    m
}

/// `‖u‖_{L²_t L^∞_x({r ≥ r_min})}`.
pub fn l2_linf_norm<T: Real>(traj: &Trajectory<T>, r_min: T) -> Result<T> {
    let Some(g) = traj.grid() else {
        return Err(NlwError::InsufficientData("empty trajectory".into()));
    };
    if r_min < T::zero() || r_min > g.r_max() {
        return Err(NlwError::OutOfRange {
            value: r_min.as_f64(),
            min: 0.0,
            max: g.r_max().as_f64(),
        });
    }
    let times = traj.times();
    let vals: Vec<T> = traj
        .states()
        .iter()
        .map(|s| {
            let m = sup_norm_outside(&s.u, r_min);
            m * m
        })
        .collect();
    Ok(trapezoid_in_time(&times, &vals).sqrt())
}
