use serde::Serialize;

use super::profile::{
    critical_norm_coeff, defect_between, exterior_cone_norm, profile_coefficients,
};
use crate::error::{NlwError, Result};
use crate::linear_prop::{FreePropagator, Trajectory};
use crate::radial_field::l4_norm_pow4;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatterConfig {
    /// Cone offset for the exterior norm.
    pub r_cone: f64,
    /// Scattering is declared when the two latest dyadic defects are below
    /// `tol_rel · (critical norm of the data)`.
    pub tol_rel: f64,
    /// Smallest elapsed time used as the left end of a dyadic pair.
    pub min_pair_time: f64,
}

impl Default for ScatterConfig {
    fn default() -> Self {
        Self {
            r_cone: 5.0,
            tol_rel: 1e-3,
            min_pair_time: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DyadicDefect {
    pub t1: f64,
    pub t2: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterReport {
    pub times: Vec<f64>,
    /// `‖u⁺₀(t)‖_{Ḣ^{1/2}}` of the profile extracted at each time.
    pub profile_norm_u: Vec<f64>,
    /// `‖u⁺₁(t)‖_{Ḣ^{−1/2}}`.
    pub profile_norm_ut: Vec<f64>,
    /// Defects over elapsed-time pairs `(T/2^{k+1}, T/2^k)`, earliest first.
    pub cauchy_defects: Vec<DyadicDefect>,
    /// `‖u‖_{L⁴_{t,x}}` over the whole trajectory.
    pub l4_total: f64,
    /// `‖u‖_{L⁴_{t,x}([t_i, T])}` for each stored time.
    pub l4_tail: Vec<f64>,
    pub r_cone: f64,
    /// `‖u‖_{L⁴_{t,x}}` over `{r ≥ r_cone + t}`.
    pub exterior_l4: f64,
    pub data_norm: f64,
    pub tol_scatter: f64,
    pub scattering_detected: bool,
}

pub fn l4_accumulation<T: Real>(traj: &Trajectory<T>) -> Result<ScatterReport> {
    l4_accumulation_with(traj, &ScatterConfig::default())
}

pub fn l4_accumulation_with<T: Real>(
    traj: &Trajectory<T>,
    cfg: &ScatterConfig,
) -> Result<ScatterReport> {
    let (Some(g), Some(t0), Some(t_end)) = (traj.grid(), traj.t_start(), traj.t_end()) else {
        return Err(NlwError::InsufficientData("empty trajectory".into()));
    };
    let prop = FreePropagator::new(*g);
    let states = traj.states();
    let times: Vec<f64> = traj.times().iter().map(|t| t.as_f64()).collect();

    let mut norm_u = Vec::with_capacity(states.len());
    let mut norm_ut = Vec::with_capacity(states.len());
    for st in states {
        let (c, ct) = profile_coefficients(&prop, st, t0);
        norm_u.push(critical_norm_coeff(&prop, c, vec![T::zero(); g.n()]).as_f64());
        norm_ut.push(critical_norm_coeff(&prop, vec![T::zero(); g.n()], ct).as_f64());
    }
    let data_norm = norm_u[0] + norm_ut[0];

    // Tail integrals accumulated from the end keep the tail exactly monotone.
    let slices: Vec<f64> = states.iter().map(|s| l4_norm_pow4(&s.u).as_f64()).collect();
    let mut tail = vec![0.0; states.len()];
    for i in (0..states.len().saturating_sub(1)).rev() {
        let piece = 0.5 * (times[i + 1] - times[i]) * (slices[i] + slices[i + 1]);
        tail[i] = tail[i + 1] + piece;
    }
    let l4_total = tail[0].powf(0.25);
    let l4_tail = tail.iter().map(|x| x.powf(0.25)).collect();

    let span = (t_end - t0).as_f64();
    let mut cauchy_defects = Vec::new();
    let mut t2 = span;
    while t2 / 2.0 >= cfg.min_pair_time && t2 > 0.0 {
        let t1 = t2 / 2.0;
        let a = traj.state_near(t0 + T::lit(t1))?;
        let b = traj.state_near(t0 + T::lit(t2))?;
        cauchy_defects.push(DyadicDefect {
            t1,
            t2,
            defect: defect_between(&prop, a, b, t0).as_f64(),
        });
        t2 = t1;
    }
    cauchy_defects.reverse();

    let tol_scatter = cfg.tol_rel * data_norm;
    let k = cauchy_defects.len();
    let scattering_detected = k >= 2
        && cauchy_defects[k - 2..]
            .iter()
            .all(|d| d.defect <= tol_scatter);
    let exterior_l4 = exterior_cone_norm(traj, T::lit(cfg.r_cone))?.as_f64();

    Ok(ScatterReport {
        times,
        profile_norm_u: norm_u,
        profile_norm_ut: norm_ut,
        cauchy_defects,
        l4_total,
        l4_tail,
        r_cone: cfg.r_cone,
        exterior_l4,
        data_norm,
        tol_scatter,
        scattering_detected,
    })
}
