use serde::Serialize;

use super::evolve::HyperbolicTrajectory;
use super::transform::{HyperbolicFrame, Sampler};
use crate::error::{NlwError, Result};
use crate::linear_prop::Trajectory;
use crate::quadrature::{hermite_partial, hermite_rule};
use crate::radial_field::FieldState;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChangeOfVariables {
    /// `4π∫∫ ũ⁴ (s/sinh s)² s² ds dτ` from the hyperbolic trajectory.
    pub lhs: f64,
    /// `4π∫∫ u⁴ r² dr dt` over the matching region of the standard trajectory.
    pub rhs: f64,
    pub rel_err: f64,
    /// Both sides vanish identically.
    pub exact: bool,
}

/// Compares both sides of the hyperbolic change of variables over the region
/// swept by `htraj`: `t0·e^{τ₀} ≤ √(t² − r²) ≤ t0·e^{τ₁}` and `s ≤ s_max`.
pub fn change_of_variables_check<T: Real>(
    traj: &Trajectory<T>,
    htraj: &HyperbolicTrajectory<T>,
    frame: &HyperbolicFrame<T>,
) -> Result<ChangeOfVariables> {
    frame.validate()?;
    let hs = htraj.states();
    if hs.len() < 2 {
        return Err(NlwError::InsufficientData(
            "hyperbolic trajectory needs two states".into(),
        ));
    }
    let hg = *htraj.grid();
    let taus = htraj.taus();
    let weights = hg.kick_weights();
    let four = T::lit(4.0);
    let four_pi = four * T::PI();
    // Slices and their τ-derivatives, d/dτ Φ⁴ = 4Φ³Φ_τ, for a Hermite rule.
    let (slice, dslice): (Vec<T>, Vec<T>) =
        hs.iter()
            .map(|st| {
                let (a, b) = st.v().iter().zip(st.vt()).zip(&weights).fold(
                    (T::zero(), T::zero()),
                    |(a, b), ((&p, &pt), &w)| {
                        (a + w * p * p * p * p, b + four * w * p * p * p * pt)
                    },
                );
                (a * hg.ds(), b * hg.ds())
            })
            .unzip();
    let lhs = four_pi * hermite_rule(&taus, &slice, &dslice);

    let sampler = Sampler::new(traj, Default::default())?;
    let g = *traj.grid().expect("sampler checked");
    let rho_a = frame.t0 * taus[0].exp();
    let rho_b = frame.t0 * taus[taus.len() - 1].exp();
    let slope = hg.s_max().tanh();
    let t_top = rho_b * hg.s_max().cosh();
    sampler.require(frame.trajectory_time(rho_a), frame.trajectory_time(t_top))?;
    sampler.require_radius(rho_b * hg.s_max().sinh())?;

    // Integrate in t first, node by node: the window ρ_a ≤ √(t² − r²) ≤ ρ_b,
    // t ≥ r·coth(s_max) has smooth ends in r, whereas slicing at fixed t would
    // put a square-root corner where the hyperboloids leave the axis. In t the
    // density φ⁴/r² is a cubic Hermite interpolant using ∂_t = 4φ³φ_t/r².
    let coth = T::one() / slope;
    let window: Vec<(T, T)> = (0..g.n())
        .map(|i| {
            let r = g.node(i);
            let a = (r * r + rho_a * rho_a).sqrt().max(r * coth);
            let b = (r * r + rho_b * rho_b).sqrt();
            (a, b)
        })
        .collect();
    let density = |st: &FieldState<T>| -> (Vec<T>, Vec<T>) {
        st.u.phi()
            .iter()
            .zip(st.ut.phi())
            .enumerate()
            .map(|(i, (&p, &pt))| {
                let r2 = g.node(i) * g.node(i);
                (p * p * p * p / r2, four * p * p * p * pt / r2)
            })
            .unzip()
    };
    let mut acc = vec![T::zero(); g.n()];
    let mut prev: Option<(T, Vec<T>, Vec<T>)> = None;
    for st in traj.states() {
        let t = st.t - frame.vertex;
        let (f, df) = density(st);
        if let Some((t_prev, f_prev, df_prev)) = prev.take() {
            if t > rho_a && t_prev < t_top {
                let h = t - t_prev;
                for (i, &(a, b)) in window.iter().enumerate() {
                    let lo = a.max(t_prev);
                    let hi = b.min(t);
                    if hi > lo {
                        let (qa, qb) = ((lo - t_prev) / h, (hi - t_prev) / h);
                        acc[i] =
                            acc[i] + hermite_partial(f_prev[i], df_prev[i], f[i], df[i], h, qa, qb);
                    }
                }
            }
        }
        prev = Some((t, f, df));
    }
    let rhs = four_pi * g.dr() * acc.iter().fold(T::zero(), |x, &y| x + y);

    let (l, r) = (lhs.as_f64(), rhs.as_f64());
    let scale = l.abs().max(r.abs());
    Ok(ChangeOfVariables {
        lhs: l,
        rhs: r,
        rel_err: if scale > 0.0 {
            (l - r).abs() / scale
        } else {
            0.0
        },
        exact: scale == 0.0,
    })
}
