use serde::Serialize;

use super::config::MonitorConfig;
use super::record::{integrate_to, Monitor};
use crate::error::{NlwError, Result};
use crate::linear_prop::{trapezoid_in_time, Trajectory};
use crate::radial_field::{weighted_l4, RadialGrid};
use crate::scalar::Real;

/// Ratios of the three spacetime Morawetz quantities to
/// `‖u‖_{L^∞Ḣ¹}·‖u_t‖_{L^∞L²}`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    /// `sup_t ‖∇u‖_{L²} · sup_t ‖u_t‖_{L²}`.
    pub rhs: f64,
    /// `μ∫∫ u⁴/|x|`.
    pub weighted_l4_integral: f64,
    /// `sup_R R^{-3}∫∫_{|x|≤R} u²`.
    pub local_mass_sup: f64,
    /// `sup_R R^{-1}∫∫_{|x|≤R} |∇u|² + u_t²`.
    pub local_energy_sup: f64,
    pub ratio_weighted_l4: Option<f64>,
    pub ratio_local_mass: Option<f64>,
    pub ratio_local_energy: Option<f64>,
    /// The discrete set of radii the suprema range over.
    pub r_grid: Vec<f64>,
    pub argmax_local_mass: f64,
    pub argmax_local_energy: f64,
    /// Set when the right-hand side vanishes.
    pub undefined: bool,
}

/// `R ∈ {2^k·dr : k = 2..=⌊log₂ n⌋}`.
pub fn dyadic_radii<T: Real>(grid: &RadialGrid<T>) -> Vec<T> {
    let kmax = (grid.n() as f64).log2().floor() as u32;
    (2..=kmax)
        .map(|k| T::from_count(1usize << k) * grid.dr())
        .collect()
}

pub fn bound_ratios<T: Real>(traj: &Trajectory<T>, cfg: &MonitorConfig<T>) -> Result<BoundReport> {
    let Some(grid) = traj.grid() else {
        return Err(NlwError::InsufficientData("empty trajectory".into()));
    };
    let mon = Monitor::new(*grid, *cfg)?;
    let radii = dyadic_radii(grid);
    let times = traj.times();
    let mu = T::lit(traj.meta().nonlinearity);

    let mut wl4 = Vec::with_capacity(times.len());
    let mut mass_by_r: Vec<Vec<T>> = vec![Vec::with_capacity(times.len()); radii.len()];
    let mut energy_by_r: Vec<Vec<T>> = vec![Vec::with_capacity(times.len()); radii.len()];
    let mut grad_sup = T::zero();
    let mut kin_sup = T::zero();
    for st in traj.states() {
        let sp = mon.spectra(st);
        wl4.push(mu * weighted_l4(&st.u));
        let (mass, energy) = mon.local_integrands(st, &sp);
        for (k, &r) in radii.iter().enumerate() {
            mass_by_r[k].push(integrate_to(&mass, grid.dr(), r));
            energy_by_r[k].push(integrate_to(&energy, grid.dr(), r));
        }
        grad_sup = grad_sup.max(mon.gradient_sq_from(&sp).sqrt());
        kin_sup = kin_sup.max(st.ut.l2_norm());
    }

    let lhs19 = trapezoid_in_time(&times, &wl4).as_f64();
    let (mut lhs20, mut arg20) = (0.0f64, 0.0f64);
    let (mut lhs21, mut arg21) = (0.0f64, 0.0f64);
    for (k, &r) in radii.iter().enumerate() {
        let rf = r.as_f64();
        let m = trapezoid_in_time(&times, &mass_by_r[k]).as_f64() / rf.powi(3);
        let e = trapezoid_in_time(&times, &energy_by_r[k]).as_f64() / rf;
        if m > lhs20 {
            lhs20 = m;
            arg20 = rf;
        }
        if e > lhs21 {
            lhs21 = e;
            arg21 = rf;
        }
    }
    let rhs = (grad_sup * kin_sup).as_f64();
    let undefined = !(rhs > 0.0);
    let ratio = |x: f64| (!undefined).then(|| x / rhs);
    Ok(BoundReport {
        rhs,
        weighted_l4_integral: lhs19,
        local_mass_sup: lhs20,
        local_energy_sup: lhs21,
        ratio_weighted_l4: ratio(lhs19),
        ratio_local_mass: ratio(lhs20),
        ratio_local_energy: ratio(lhs21),
        r_grid: radii.iter().map(|r| r.as_f64()).collect(),
        argmax_local_mass: arg20,
        argmax_local_energy: arg21,
        undefined,
    })
}
