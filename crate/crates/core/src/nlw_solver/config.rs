use serde::{Deserialize, Serialize};

use crate::error::{NlwError, Result};
use crate::radial_field::RadialGrid;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Half kick, exact free drift, half kick.
    #[default]
    Strang,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig<T> {
    pub dt: T,
    pub t_end: T,
    /// Steps between stored states.
    pub output_stride: usize,
    pub scheme: Scheme,
    /// `μ` in `u_tt − Δu + μu³ = 0`; 1 for the defocusing equation, 0 for the
    /// linear wave equation.
    pub nonlinearity: T,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            dt: T::lit(1e-3),
            t_end: T::lit(10.0),
            output_stride: 10,
            scheme: Scheme::Strang,
            nonlinearity: T::one(),
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn validate(&self, grid: &RadialGrid<T>) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > T::zero()) {
            return Err(NlwError::Config(format!(
                "solver.dt must be positive, got {}",
                self.dt
            )));
        }
        if self.dt > T::lit(0.5) * grid.dr() {
            return Err(NlwError::Config(format!(
                "solver.dt = {} exceeds 0.5·dr = {}",
                self.dt,
                T::lit(0.5) * grid.dr()
            )));
        }
        if !(self.t_end.is_finite() && self.t_end >= T::zero()) {
            return Err(NlwError::Config(
                "solver.t_end must be finite and nonnegative".into(),
            ));
        }
        if self.output_stride == 0 {
            return Err(NlwError::Config(
                "solver.output_stride must be at least 1".into(),
            ));
        }
        if !self.nonlinearity.is_finite() {
            return Err(NlwError::Config(
                "solver.nonlinearity must be finite".into(),
            ));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round().to_usize().unwrap_or(0)
    }
}

/// Frequency split of the initial data into `v₀ = P_{≤K}u₀` and `w₀ = u₀ − v₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitConfig<T> {
    /// Dyadic cut: `K = 2^{j_cut}` before any refinement.
    pub j_cut: i32,
    /// When set, `j_cut` is raised until `‖w₀‖_{Ḣ^{1/2}} + ‖w₁‖_{Ḣ^{−1/2}} ≤ ε`.
    pub epsilon_target: Option<T>,
    /// With a target, also rescale within the final octave so the high-frequency
    /// norm lands on the target instead of just below it.
    pub refine_scale: bool,
}

impl<T: Real> SplitConfig<T> {
    pub fn fixed(j_cut: i32) -> Self {
        Self {
            j_cut,
            epsilon_target: None,
            refine_scale: false,
        }
    }

    pub fn targeted(j_cut: i32, epsilon: T) -> Self {
        Self {
            j_cut,
            epsilon_target: Some(epsilon),
            refine_scale: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(e) = self.epsilon_target {
            if !(e.is_finite() && e > T::zero()) {
                return Err(NlwError::Config(
                    "split.epsilon_target must be positive".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial_field::make_grid;

    #[test]
    fn cfl_guard() {
        let g = make_grid(40.0, 4095).unwrap();
        let mut c = SolverConfig::<f64>::default();
        assert!(c.validate(&g).is_ok());
        assert_eq!(c.steps(), 10_000);
        c.dt = 0.006;
        assert!(c.validate(&g).is_err());
        c.dt = 1e-3;
        c.output_stride = 0;
        assert!(c.validate(&g).is_err());
    }
}
