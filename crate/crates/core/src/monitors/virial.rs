use serde::Serialize;

use super::config::MonitorConfig;
use super::record::Monitor;
use crate::error::{NlwError, Result};
use crate::linear_prop::Trajectory;
use crate::radial_field::weighted_l4;
use crate::scalar::Real;

/// Check of `dM/dt = −κ u(t,0)² − (μ/2)∫u⁴/|x|` for `M = ∫u_t x/|x|·∇u + ∫u_t u/|x|`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub times: Vec<f64>,
    /// Five-point centered difference of `M`.
    pub lhs: Vec<f64>,
    /// `−κ u(t,0)² − (μ/2)∫u⁴/|x|` with the fitted `κ`.
    pub rhs: Vec<f64>,
    pub residual: Vec<f64>,
    pub origin_sq: Vec<f64>,
    pub weighted_l4: Vec<f64>,
    /// Least-squares fit of the origin coefficient; `None` when `u(t,0) ≡ 0`.
    pub kappa: Option<f64>,
    pub nonlinearity: f64,
    pub max_residual: f64,
    pub max_lhs: f64,
    /// `max(1e−3·max|lhs|, 1e−6)`.
    pub tolerance: f64,
    pub within_tolerance: bool,
    /// `lhs ≤ rhs + tolerance` at every sample.
    pub sign_preserved: bool,
    /// `u(0)` evaluation rule.
    pub origin_rule: &'static str,
}

pub const VIRIAL_REL_TOL: f64 = 1e-3;
pub const VIRIAL_ABS_TOL: f64 = 1e-6;

/// Fits `κ` over `window` and reports the pointwise residual.
///
/// `M` is evaluated with unit weight at every stored state in the window; the
/// trajectory stride must be uniform there.
pub fn virial_residual<T: Real>(
    traj: &Trajectory<T>,
    window: (T, T),
    cfg: &MonitorConfig<T>,
) -> Result<IdentityReport> {
    let Some(grid) = traj.grid() else {
        return Err(NlwError::InsufficientData("empty trajectory".into()));
    };
    let (a, b) = window;
    let idx: Vec<usize> = traj
        .states()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.t >= a && s.t <= b)
        .map(|(i, _)| i)
        .collect();
    if idx.len() < 6 {
        return Err(NlwError::InsufficientData(format!(
            "virial window [{a}, {b}] holds {} stored states; at least 6 (five strides) are needed",
            idx.len()
        )));
    }
    let mon = Monitor::new(*grid, *cfg)?;
    let states = traj.states();
    let h = (states[idx[1]].t - states[idx[0]].t).as_f64();
    let m: Vec<f64> = idx
        .iter()
        .map(|&i| {
            let sp = mon.spectra(&states[i]);
            mon.radial_morawetz_from(&states[i], &sp).as_f64()
        })
        .collect();
    for w in idx.windows(2) {
        let step = (states[w[1]].t - states[w[0]].t).as_f64();
        if (step - h).abs() > 1e-9 * h.abs().max(1.0) {
            return Err(NlwError::InsufficientData(
                "virial window needs a uniform stride".into(),
            ));
        }
    }
    let mu = traj.meta().nonlinearity;
    let mut times = Vec::new();
    let mut lhs = Vec::new();
    let mut origin_sq = Vec::new();
    let mut wl4 = Vec::new();
    for j in 2..idx.len() - 2 {
        let d = (-m[j + 2] + 8.0 * m[j + 1] - 8.0 * m[j - 1] + m[j - 2]) / (12.0 * h);
        let st = &states[idx[j]];
        let u0 = st.u.u_at_origin().as_f64();
        times.push(st.t.as_f64());
        lhs.push(d);
        origin_sq.push(u0 * u0);
        wl4.push(weighted_l4(&st.u).as_f64());
    }
    let num: f64 = lhs
        .iter()
        .zip(&origin_sq)
        .zip(&wl4)
        .map(|((l, o), w)| (l + 0.5 * mu * w) * o)
        .sum();
    let den: f64 = origin_sq.iter().map(|o| o * o).sum();
    let kappa = (den > 0.0).then(|| -num / den);
    let k = kappa.unwrap_or(0.0);
    let rhs: Vec<f64> = origin_sq
        .iter()
        .zip(&wl4)
        .map(|(o, w)| -k * o - 0.5 * mu * w)
        .collect();
    let residual: Vec<f64> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
    let max_residual = residual.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let max_lhs = lhs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tolerance = (VIRIAL_REL_TOL * max_lhs).max(VIRIAL_ABS_TOL);
    let sign_preserved = lhs.iter().zip(&rhs).all(|(l, r)| *l <= *r + tolerance);
    Ok(IdentityReport {
        times,
        lhs,
        rhs,
        residual,
        origin_sq,
        weighted_l4: wl4,
        kappa,
        nonlinearity: mu,
        max_residual,
        max_lhs,
        tolerance,
        within_tolerance: max_residual <= tolerance,
        sign_preserved,
        origin_rule: "u(0) = (4 u(r1) - u(r2)) / 3",
    })
}
