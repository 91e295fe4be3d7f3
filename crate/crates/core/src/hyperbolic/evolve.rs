use serde::Serialize;

use super::grid::{HyperbolicGrid, HyperbolicState};
use crate::error::{NlwError, Result};
use crate::nlw_solver::{check_finite, Stepper};
use crate::radial_field::SineTransform;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperbolicConfig<T> {
    pub tau_end: T,
    pub dt_tau: T,
    pub output_stride: usize,
    pub nonlinearity: T,
}

impl<T: Real> HyperbolicConfig<T> {
    pub fn new(tau_end: T, dt_tau: T) -> Self {
        Self {
            tau_end,
            dt_tau,
            output_stride: 10,
            nonlinearity: T::one(),
        }
    }

    pub fn validate(&self, grid: &HyperbolicGrid<T>) -> Result<()> {
        if !(self.dt_tau.is_finite() && self.dt_tau > T::zero()) {
            return Err(NlwError::Config(format!(
                "hyperbolic.dt_tau must be positive, got {}",
                self.dt_tau
            )));
        }
        if self.dt_tau > T::lit(0.5) * grid.ds() {
            return Err(NlwError::Config(format!(
                "hyperbolic.dt_tau = {} exceeds 0.5·ds = {}",
                self.dt_tau,
                T::lit(0.5) * grid.ds()
            )));
        }
        if !(self.tau_end.is_finite() && self.tau_end >= T::zero()) {
            return Err(NlwError::Config(
                "hyperbolic.tau_end must be finite and nonnegative".into(),
            ));
        }
        if self.output_stride == 0 {
            return Err(NlwError::Config(
                "hyperbolic.output_stride must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.tau_end / self.dt_tau).round().to_usize().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct HyperbolicTrajectory<T> {
    states: Vec<HyperbolicState<T>>,
    energies: Vec<T>,
    pub dt_tau: T,
    pub output_stride: usize,
}

impl<T: Real> HyperbolicTrajectory<T> {
    pub fn states(&self) -> &[HyperbolicState<T>] {
        &self.states
    }

    /// Hyperbolic energy of every stored state.
    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn taus(&self) -> Vec<T> {
        self.states.iter().map(|s| s.tau).collect()
    }

    pub fn grid(&self) -> &HyperbolicGrid<T> {
        self.states[0].grid()
    }

    /// `max_τ |E(τ) − E(τ₀)| / E(τ₀)` (0 for a zero trajectory).
    pub fn relative_energy_drift(&self) -> T {
        let e0 = self.energies[0];
        if e0 == T::zero() {
            return T::zero();
        }
        self.energies
            .iter()
            .fold(T::zero(), |m, &e| m.max(((e - e0) / e0).abs()))
    }

    /// Stored state closest to `tau`.
    pub fn state_near(&self, tau: T) -> &HyperbolicState<T> {
        let i = self
            .states
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1.tau - tau)
                    .abs()
                    .partial_cmp(&(b.1.tau - tau).abs())
                    .expect("finite")
            })
            .map(|(i, _)| i)
            .expect("nonempty");
        &self.states[i]
    }
}

/// `4π[½∫Φ_τ² + ½∫Φ_s² + ¼μ∫Φ⁴/sinh²s] ds`, i.e.
/// `½‖ũ_τ‖² + ½‖ũ_s‖² + ¼μ∫ũ⁴(s/sinh s)² dx` with `dx = 4πs² ds`.
pub fn hyperbolic_energy<T: Real>(st: &HyperbolicState<T>, mu: T) -> T {
    let tr = SineTransform::new(st.grid().m());
    hyperbolic_energy_with(&tr, &st.grid().kick_weights(), mu, st)
}

fn hyperbolic_energy_with<T: Real>(
    tr: &SineTransform<T>,
    weights: &[T],
    mu: T,
    st: &HyperbolicState<T>,
) -> T {
    let g = st.grid();
    let ds = g.ds();
    let c = tr.forward(st.v());
    let grad = c.iter().enumerate().fold(T::zero(), |a, (k, &ck)| {
        let xi = g.as_radial().frequency(k);
        a + xi * xi * ck * ck
    }) * g.s_max()
        * T::lit(0.5);
    let kin = st.vt().iter().fold(T::zero(), |a, &x| a + x * x) * ds;
    let pot = st
        .v()
        .iter()
        .zip(weights)
        .fold(T::zero(), |a, (&p, &w)| a + w * p * p * p * p)
        * ds
        * mu;
    let half = T::lit(0.5);
    T::lit(4.0) * T::PI() * (half * kin + half * grad + T::lit(0.25) * pot)
}

/// Evolves `Φ_ττ − Φ_ss + μΦ³/sinh²s = 0` (the reduced form of the
/// hyperbolic-coordinate equation) with the Strang stepper.
pub fn evolve_hyperbolic<T: Real>(
    st: &HyperbolicState<T>,
    cfg: &HyperbolicConfig<T>,
) -> Result<HyperbolicTrajectory<T>> {
    let grid = *st.grid();
    cfg.validate(&grid)?;
    let weights = grid.kick_weights();
    let kick: Vec<T> = weights.iter().map(|&w| cfg.nonlinearity * w).collect();
    let stepper = Stepper::with_weight(*grid.as_radial(), cfg.dt_tau, cfg.nonlinearity, kick);
    let tr = SineTransform::new(grid.m());
    let steps = cfg.steps();

    let mut v = st.v().to_vec();
    let mut vt = st.vt().to_vec();
    let mut states = vec![st.clone()];
    let mut energies = vec![hyperbolic_energy_with(&tr, &weights, cfg.nonlinearity, st)];
    for k in 1..=steps {
        stepper.advance(&mut v, &mut vt);
        if k.is_multiple_of(cfg.output_stride) || k == steps {
            let tau = st.tau + T::from_count(k) * cfg.dt_tau;
            check_finite("hyperbolic", &v, &vt, k as u64, tau)?;
            let s = HyperbolicState::from_parts(tau, grid, v.clone(), vt.clone());
            energies.push(hyperbolic_energy_with(&tr, &weights, cfg.nonlinearity, &s));
            states.push(s);
        }
    }
    Ok(HyperbolicTrajectory {
        states,
        energies,
        dt_tau: cfg.dt_tau,
        output_stride: cfg.output_stride,
    })
}
