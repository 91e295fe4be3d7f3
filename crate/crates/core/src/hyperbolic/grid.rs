use serde::Serialize;

use crate::error::{NlwError, Result};
use crate::radial_field::RadialGrid;
use crate::scalar::Real;

/// Below this `s` the weight uses its Taylor series.
pub const WEIGHT_SERIES_CUTOFF: f64 = 1e-4;

/// `(s / sinh s)²`, accurate from `s = 0` to beyond the range where
/// `sinh s` overflows.
pub fn hyperbolic_weight<T: Real>(s: T) -> T {
    let s = s.abs();
    let q = if s < T::lit(WEIGHT_SERIES_CUTOFF) {
        let s2 = s * s;
        T::one() - s2 / T::lit(6.0) + T::lit(7.0) * s2 * s2 / T::lit(360.0)
    } else {
        // s / sinh s = 2s e^{−s} / (1 − e^{−2s})
        let two = T::lit(2.0);
        two * s * (-s).exp() / -(-two * s).exp_m1()
    };
    q * q
}

/// Uniform grid in the hyperbolic radius `s ∈ [0, s_max]`, same layout as
/// [`RadialGrid`]: `m` interior nodes `s_i = i·ds`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperbolicGrid<T> {
    inner: RadialGrid<T>,
}

impl<T: Real> HyperbolicGrid<T> {
    pub fn new(s_max: T, m: usize) -> Result<Self> {
        let inner = RadialGrid::new(s_max, m).map_err(|e| {
            NlwError::Config(
                e.to_string()
                    .replace("grid.r_max", "hyperbolic.s_max")
                    .replace("grid.n", "hyperbolic.m"),
            )
        })?;
        Ok(Self { inner })
    }

    pub fn s_max(&self) -> T {
        self.inner.r_max()
    }

    pub fn m(&self) -> usize {
        self.inner.n()
    }

    pub fn ds(&self) -> T {
        self.inner.dr()
    }

    pub fn node(&self, i: usize) -> T {
        self.inner.node(i)
    }

    pub fn nodes(&self) -> Vec<T> {
        self.inner.nodes()
    }

    /// The same grid viewed as a radial grid, for reuse of the sine machinery.
    pub fn as_radial(&self) -> &RadialGrid<T> {
        &self.inner
    }

    /// `1/sinh²(s_i)`, the weight of `Φ³` in the reduced equation.
    pub fn kick_weights(&self) -> Vec<T> {
        self.nodes()
            .into_iter()
            .map(|s| hyperbolic_weight(s) / (s * s))
            .collect()
    }
}

/// `Φ = s·ũ` and `Φ_τ = s·ũ_τ` on a hyperboloid `τ = const`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicState<T> {
    pub tau: T,
    grid: HyperbolicGrid<T>,
    v: Vec<T>,
    vt: Vec<T>,
}

impl<T: Real> HyperbolicState<T> {
    pub fn new(tau: T, grid: HyperbolicGrid<T>, v: Vec<T>, vt: Vec<T>) -> Result<Self> {
        if v.len() != grid.m() || vt.len() != grid.m() {
            return Err(NlwError::Config(format!(
                "hyperbolic state needs {} samples per component",
                grid.m()
            )));
        }
        if !tau.is_finite() || v.iter().chain(&vt).any(|x| !x.is_finite()) {
            return Err(NlwError::Config(
                "hyperbolic state has non-finite entries".into(),
            ));
        }
        Ok(Self { tau, grid, v, vt })
    }

    pub(crate) fn from_parts(tau: T, grid: HyperbolicGrid<T>, v: Vec<T>, vt: Vec<T>) -> Self {
        Self { tau, grid, v, vt }
    }

    pub fn zeros(grid: HyperbolicGrid<T>, tau: T) -> Self {
        Self::from_parts(
            tau,
            grid,
            vec![T::zero(); grid.m()],
            vec![T::zero(); grid.m()],
        )
    }

    /// Samples `ũ(s)` and `ũ_τ(s)` profiles.
    pub fn from_profiles(
        grid: HyperbolicGrid<T>,
        tau: T,
        u: impl Fn(T) -> T,
        ut: impl Fn(T) -> T,
    ) -> Self {
        let nodes = grid.nodes();
        let v = nodes.iter().map(|&s| s * u(s)).collect();
        let vt = nodes.iter().map(|&s| s * ut(s)).collect();
        Self::from_parts(tau, grid, v, vt)
    }

    pub fn grid(&self) -> &HyperbolicGrid<T> {
        &self.grid
    }

    pub fn v(&self) -> &[T] {
        &self.v
    }

    pub fn vt(&self) -> &[T] {
        &self.vt
    }

    /// `ũ(s_i) = Φ(s_i)/s_i`.
    pub fn u_values(&self) -> Vec<T> {
        self.v
            .iter()
            .enumerate()
            .map(|(i, &p)| p / self.grid.node(i))
            .collect()
    }

    /// `ũ(τ, 0)` by Richardson extrapolation from the first two nodes.
    pub fn u_at_origin(&self) -> T {
        let u1 = self.v[0] / self.grid.node(0);
        let u2 = self.v[1] / self.grid.node(1);
        (T::lit(4.0) * u1 - u2) / T::lit(3.0)
    }

    /// Copies the state onto a longer grid with the same spacing, filling the
    /// new nodes with zeros.
    pub fn zero_padded(&self, grid: HyperbolicGrid<T>) -> Result<Self> {
        let same = (grid.ds() - self.grid.ds()).abs() <= T::lit(1e-12) * self.grid.ds();
        if !same || grid.m() < self.grid.m() {
            return Err(NlwError::Config(
                "padding needs a grid with equal spacing and at least as many nodes".into(),
            ));
        }
        let mut v = self.v.clone();
        let mut vt = self.vt.clone();
        v.resize(grid.m(), T::zero());
        vt.resize(grid.m(), T::zero());
        Ok(Self::from_parts(self.tau, grid, v, vt))
    }

    pub fn max_abs(&self) -> T {
        self.v
            .iter()
            .chain(&self.vt)
            .fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// `4π ∫ Φ² ds`, the `L²(R³)` norm squared of `ũ` in the flat `s` metric.
    pub fn l2_norm_sq(&self) -> T {
        T::lit(4.0) * T::PI() * self.grid.ds() * self.v.iter().fold(T::zero(), |a, &x| a + x * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_series_branch_is_one_at_tiny_s() {
        assert!((hyperbolic_weight(1e-8f64) - 1.0).abs() <= 1e-15);
        assert_eq!(hyperbolic_weight(0.0f64), 1.0);
    }

    #[test]
    fn weight_matches_direct_formula_across_branches() {
        for &s in &[1e-4f64, 2e-4, 1e-3, 0.1, 1.0, 5.0] {
            let direct = (s / s.sinh()).powi(2);
            assert!(
                (hyperbolic_weight(s) - direct).abs() <= 1e-14 * direct,
                "s = {s}"
            );
        }
        let below = hyperbolic_weight(0.999_999e-4f64);
        let above = hyperbolic_weight(1.000_001e-4f64);
        assert!((below - above).abs() < 1e-13);
    }

    #[test]
    fn weight_large_s_does_not_underflow_early() {
        let w = hyperbolic_weight(20.0f64);
        let expected = (2.0 * 20.0 * (-20.0f64).exp()).powi(2);
        assert!((w - expected).abs() <= 1e-12 * expected);
        assert!(hyperbolic_weight(300.0f64) > 0.0);
        assert!(hyperbolic_weight(1000.0f64).is_finite());
    }

    #[test]
    fn weight_is_decreasing_and_bounded() {
        let g = HyperbolicGrid::new(30.0f64, 4095).unwrap();
        let w: Vec<f64> = g.nodes().into_iter().map(hyperbolic_weight).collect();
        assert!(w.iter().all(|&x| x > 0.0 && x <= 1.0));
        assert!(w.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn padding_keeps_values_and_spacing() {
        let g = HyperbolicGrid::new(1.0f64, 15).unwrap();
        let big = HyperbolicGrid::new(2.0f64, 31).unwrap();
        let st = HyperbolicState::from_profiles(g, 0.0, |s| (-s * s).exp(), |_| 0.0);
        let p = st.zero_padded(big).unwrap();
        assert_eq!(&p.v()[..15], st.v());
        assert!(p.v()[15..].iter().all(|&x| x == 0.0));
        assert!(st
            .zero_padded(HyperbolicGrid::new(2.0, 15).unwrap())
            .is_err());
    }
}
