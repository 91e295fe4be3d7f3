//! Littlewood–Paley projections realized as sine-space multipliers.
//!
//! For radial `u` the 3D Fourier transform is `4π φ̂(ξ)/ξ`, so a radial
//! multiplier `m(|ξ|)` acting on `u` is the same multiplier acting on the
//! sine coefficients of `φ`.

use serde::Serialize;

use super::field::{RadialField, SpectralField};
use super::grid::RadialGrid;
use super::transform::SineTransform;
use crate::error::{NlwError, Result};
use crate::scalar::Real;

/// Smooth monotone ramp `S: [0,1] → [0,1]`, `S(x) = h(x)/(h(x)+h(1−x))`,
/// `h(x) = exp(−1/x)`. Satisfies `S(x) + S(1−x) = 1`.
pub fn smooth_step<T: Real>(x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if x >= T::one() {
        return T::one();
    }
    let h = |y: T| (-T::one() / y).exp();
    let a = h(x);
    let b = h(T::one() - x);
    a / (a + b)
}

/// The cutoff profile used for every projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BumpProfile {
    /// `χ(ξ) = 1 − S(|ξ| − 1)` on `1 < |ξ| < 2` with the exponential smooth step `S`.
    #[default]
    ExpSmoothStep,
}

impl BumpProfile {
    pub fn eval<T: Real>(self, xi: T) -> T {
        match self {
            BumpProfile::ExpSmoothStep => {
                let a = xi.abs();
                if a <= T::one() {
                    T::one()
                } else if a >= T::lit(2.0) {
                    T::zero()
                } else {
                    T::one() - smooth_step(a - T::one())
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BumpProfile::ExpSmoothStep => {
                "chi(xi)=1-S(|xi|-1), S(x)=e^{-1/x}/(e^{-1/x}+e^{-1/(1-x)})"
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionKind {
    /// `P_j`, multiplier `χ(ξ/2^j) − χ(ξ/2^{j−1})`.
    Band,
    /// `P_{≤j}`, multiplier `χ(ξ/2^j)`.
    Low,
    /// `P_{>j} = I − P_{≤j}`.
    High,
}

/// Dyadic band range and cutoff profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LpConfig {
    pub bump: BumpProfile,
    pub j_min: i32,
    pub j_max: i32,
}

impl LpConfig {
    /// Smallest band range whose end caps vanish on the resolved frequencies:
    /// `2^{j_min} ≤ π/r_max` and `2^{j_max} ≥ nπ/r_max`.
    pub fn for_grid<T: Real>(grid: &RadialGrid<T>) -> Self {
        let lo = grid.frequency(0).as_f64().log2().floor() as i32;
        let hi = grid.xi_max().as_f64().log2().ceil() as i32;
        Self {
            bump: BumpProfile::default(),
            j_min: lo,
            j_max: hi,
        }
    }

    pub fn multiplier<T: Real>(&self, j: i32, kind: ProjectionKind, xi: T) -> T {
        let chi = |jj: i32| self.bump.eval(xi / T::lit(2f64.powi(jj)));
        match kind {
            ProjectionKind::Band => chi(j) - chi(j - 1),
            ProjectionKind::Low => chi(j),
            ProjectionKind::High => T::one() - chi(j),
        }
    }

    fn check(&self, j: i32, kind: ProjectionKind) -> Result<()> {
        let min = match kind {
            ProjectionKind::Band => self.j_min,
            _ => self.j_min - 1,
        };
        if j < min || j > self.j_max {
            return Err(NlwError::Range {
                index: j as i64,
                min: min as i64,
                max: self.j_max as i64,
            });
        }
        Ok(())
    }
}

/// Applies a radial Fourier multiplier `m(ξ)` to `u`.
pub fn apply_multiplier<T: Real>(
    tr: &SineTransform<T>,
    f: &RadialField<T>,
    m: impl Fn(T) -> T,
) -> RadialField<T> {
    let grid = *f.grid();
    let mut c = tr.forward(f.phi());
    for (k, ck) in c.iter_mut().enumerate() {
        *ck = *ck * m(grid.frequency(k));
    }
    RadialField::from_phi_unchecked(grid, tr.inverse(&c))
}

pub fn lp_project<T: Real>(
    f: &RadialField<T>,
    j: i32,
    kind: ProjectionKind,
    cfg: &LpConfig,
) -> Result<RadialField<T>> {
    cfg.check(j, kind)?;
    let tr = SineTransform::new(f.grid().n());
    Ok(apply_multiplier(&tr, f, |xi| cfg.multiplier(j, kind, xi)))
}

/// Same projection acting directly on coefficients.
pub fn lp_project_spectral<T: Real>(
    c: &SpectralField<T>,
    j: i32,
    kind: ProjectionKind,
    cfg: &LpConfig,
) -> Result<SpectralField<T>> {
    cfg.check(j, kind)?;
    let grid = *c.grid();
    let coeff = c
        .coeff()
        .iter()
        .enumerate()
        .map(|(k, &ck)| ck * cfg.multiplier(j, kind, grid.frequency(k)))
        .collect();
    SpectralField::from_coefficients(grid, coeff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial_field::make_grid;

    #[test]
    fn bump_shape() {
        let b = BumpProfile::ExpSmoothStep;
        assert_eq!(b.eval(0.3), 1.0);
        assert_eq!(b.eval(-1.0), 1.0);
        assert_eq!(b.eval(2.0), 0.0);
        assert!((b.eval(1.5f64) - 0.5).abs() < 1e-15);
        let xs: Vec<f64> = (0..=400).map(|i| 1.0 + i as f64 / 400.0).collect();
        assert!(xs.windows(2).all(|w| b.eval(w[1]) <= b.eval(w[0])));
    }

    #[test]
    fn partition_of_unity_on_frequency_axis() {
        let cfg = LpConfig {
            bump: BumpProfile::default(),
            j_min: -4,
            j_max: 10,
        };
        for i in 1..2000 {
            let xi = 0.07 + i as f64 * 0.25;
            let mut s = 0.0;
            for j in cfg.j_min..=cfg.j_max {
                s += cfg.multiplier(j, ProjectionKind::Band, xi);
            }
            s += cfg.multiplier(cfg.j_min - 1, ProjectionKind::Low, xi);
            s += cfg.multiplier(cfg.j_max, ProjectionKind::High, xi);
            assert!((s - 1.0).abs() < 1e-12, "xi={xi} sum={s}");
        }
    }

    #[test]
    fn out_of_band_is_rejected() {
        let g = make_grid(10.0, 63).unwrap();
        let cfg = LpConfig::for_grid(&g);
        let f = RadialField::<f64>::zeros(g);
        assert!(matches!(
            lp_project(&f, cfg.j_max + 1, ProjectionKind::Band, &cfg),
            Err(NlwError::Range { .. })
        ));
        assert!(lp_project(&f, cfg.j_min - 1, ProjectionKind::Low, &cfg).is_ok());
        assert!(lp_project(&f, cfg.j_min - 1, ProjectionKind::Band, &cfg).is_err());
    }
}
