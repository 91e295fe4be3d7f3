use serde::{Deserialize, Serialize};

use crate::error::{NlwError, Result};
use crate::radial_field::smooth_step;
use crate::scalar::Real;

/// Cutoff `χ` for the localized Morawetz potential.
///
/// `χ = 1` on `[0,1]`, `χ(ρ) = 3/(2ρ)` for `ρ ≥ 2`, built from
/// `ϕ = χ + ρχ' = (ρχ)'` with `ϕ = 1 − S(ρ − 1)` on `[1,2]` so that
/// `ϕ ≥ 0`, `ϕ = 1` on `[0,1]`, `supp ϕ ⊂ [0,2]` and `∫_0^2 ϕ = 3/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MorawetzCutoff {
    #[default]
    ExpSmoothStep,
}

impl MorawetzCutoff {
    /// `ϕ(ρ) = χ(ρ) + ρχ'(ρ)`.
    pub fn phi<T: Real>(self, rho: T) -> T {
        if rho <= T::one() {
            T::one()
        } else if rho >= T::lit(2.0) {
            T::zero()
        } else {
            T::one() - smooth_step(rho - T::one())
        }
    }

    pub fn chi<T: Real>(self, rho: T) -> T {
        if rho <= T::one() {
            return T::one();
        }
        if rho >= T::lit(2.0) {
            return T::lit(1.5) / rho;
        }
        (rho - integrate_smooth_step(rho - T::one())) / rho
    }

    pub fn name(self) -> &'static str {
        match self {
            MorawetzCutoff::ExpSmoothStep => {
                "chi(rho)=(1/rho)*int_0^rho phi, phi=1-S(rho-1) on [1,2], chi=3/(2rho) for rho>=2"
            }
        }
    }
}

/// `∫_0^y S(x) dx` for `0 ≤ y ≤ 1` (composite Simpson, ≥ 2000 panels per unit).
fn integrate_smooth_step<T: Real>(y: T) -> T {
    if y <= T::zero() {
        return T::zero();
    }
    let m = ((y.as_f64() * 2000.0).ceil() as usize).max(8);
    let m = m + m % 2;
    let h = y / T::from_count(m);
    let mut s = smooth_step(T::zero()) + smooth_step(y);
    for i in 1..m {
        let w = if i % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
        s = s + w * smooth_step(h * T::from_count(i));
    }
    s * h / T::lit(3.0)
}

/// Parameters of the Morawetz-type monitors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonitorConfig<T> {
    /// Localization radius `R` for `M₂`, `M₃` and the local mass/energy.
    pub radius: T,
    pub c1: T,
    pub c2: T,
    pub c3: T,
    /// Cauchy–Schwarz split parameter; carried for provenance only.
    pub delta: T,
    pub chi_profile: MorawetzCutoff,
}

impl<T: Real> Default for MonitorConfig<T> {
    fn default() -> Self {
        Self {
            radius: T::one(),
            c1: T::lit(0.01),
            c2: T::lit(0.01),
            c3: T::lit(0.01),
            delta: T::lit(0.5),
            chi_profile: MorawetzCutoff::default(),
        }
    }
}

impl<T: Real> MonitorConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > T::zero()) {
            return Err(NlwError::Config("monitors.radius must be positive".into()));
        }
        for (name, c) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3)] {
            if !(c.is_finite() && c >= T::zero()) {
                return Err(NlwError::Config(format!(
                    "monitors.{name} must be nonnegative"
                )));
            }
        }
        if !(self.delta > T::zero() && self.delta < T::one()) {
            return Err(NlwError::Config("monitors.delta must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_matches_its_defining_relations() {
        let c = MorawetzCutoff::ExpSmoothStep;
        assert_eq!(c.chi(0.5), 1.0);
        assert!((c.chi(2.0f64) - 0.75).abs() < 1e-15);
        // Continuity at ρ = 2 from the ramp side confirms ∫_0^2 ϕ = 3/2.
        assert!((c.chi(2.0f64 - 1e-9) - 0.75).abs() < 1e-8);
        assert!((integrate_smooth_step(1.0f64) - 0.5).abs() < 1e-12);
        // (ρχ)' = ϕ by central differences on the ramp.
        for i in 1..20 {
            let rho = 1.0 + i as f64 / 20.0;
            let h = 1e-5;
            let d = ((rho + h) * c.chi(rho + h) - (rho - h) * c.chi(rho - h)) / (2.0 * h);
            assert!((d - c.phi(rho)).abs() < 1e-7, "rho={rho}");
        }
    }

    #[test]
    fn defaults_validate() {
        assert!(MonitorConfig::<f64>::default().validate().is_ok());
        let bad = MonitorConfig::<f64> {
            delta: 1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = MonitorConfig::<f64> {
            radius: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
