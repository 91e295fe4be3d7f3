use serde::Serialize;

use crate::error::{NlwError, Result};
use crate::scalar::Real;

/// Smallest admissible interior node count (`n + 1 >= 8`).
pub const MIN_NODES: usize = 7;

/// Uniform radial grid on `[0, r_max]` with `n` interior nodes `r_i = i·dr`,
/// `i = 1..=n`, `dr = r_max / (n + 1)`.
///
/// Both endpoints carry homogeneous Dirichlet data for `φ = r·u`, so they are
/// not stored. Any `n` works; `n + 1` a power of two gives the fastest
/// transforms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid<T> {
    r_max: T,
    n: usize,
    dr: T,
}

impl<T: Real> RadialGrid<T> {
    pub fn new(r_max: T, n: usize) -> Result<Self> {
        if !(r_max.is_finite() && r_max > T::zero()) {
            return Err(NlwError::Config(format!(
                "grid.r_max must be positive and finite, got {r_max}"
            )));
        }
        if n < MIN_NODES {
            return Err(NlwError::Config(format!(
                "grid.n must be at least {MIN_NODES}, got {n}"
            )));
        }
        let dr = r_max / T::from_count(n + 1);
        Ok(Self { r_max, n, dr })
    }

    #[inline]
    pub fn r_max(&self) -> T {
        self.r_max
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dr(&self) -> T {
        self.dr
    }

    /// Radius of the node with zero-based storage index `i` (`r = (i+1)·dr`).
    #[inline]
    pub fn node(&self, i: usize) -> T {
        T::from_count(i + 1) * self.dr
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Frequency of the sine mode with zero-based index `k` (`ξ = (k+1)π/r_max`).
    #[inline]
    pub fn frequency(&self, k: usize) -> T {
        T::from_count(k + 1) * T::PI() / self.r_max
    }

    pub fn frequencies(&self) -> Vec<T> {
        (0..self.n).map(|k| self.frequency(k)).collect()
    }

    /// Spacing of the frequency lattice, `π / r_max`.
    #[inline]
    pub fn dxi(&self) -> T {
        T::PI() / self.r_max
    }

    /// Largest resolved frequency `nπ/r_max`.
    #[inline]
    pub fn xi_max(&self) -> T {
        self.frequency(self.n - 1)
    }

    /// The same samples reinterpreted on `[0, r_max/λ]`.
    ///
    /// Under `u ↦ λu(λx)` the reduced field `φ = r·u` keeps its sample values
    /// and only the grid is relabeled, so rescaling is exact.
    pub fn rescaled(&self, lambda: T) -> Result<Self> {
        if !(lambda.is_finite() && lambda > T::zero()) {
            return Err(NlwError::Config(format!(
                "rescale factor must be positive, got {lambda}"
            )));
        }
        Self::new(self.r_max / lambda, self.n)
    }

    /// Index of the last node with `r <= radius`, if any.
    pub fn last_node_within(&self, radius: T) -> Option<usize> {
        if radius < self.dr {
            return None;
        }
        let k = (radius / self.dr + T::lit(1e-9)).floor().to_usize()?;
        Some(k.min(self.n) - 1)
    }
}

/// Builds a [`RadialGrid`]; see [`RadialGrid::new`].
pub fn make_grid<T: Real>(r_max: T, n: usize) -> Result<RadialGrid<T>> {
    RadialGrid::new(r_max, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_grid_spacing() {
        let g = make_grid(40.0f64, 4095).unwrap();
        assert_eq!(g.dr(), 40.0 / 4096.0);
        assert!((g.dr() - 0.009765625).abs() < 1e-15);
        assert_eq!(g.node(0), g.dr());
    }

    #[test]
    fn small_grid_nodes() {
        let g = make_grid(1.0, 7).unwrap();
        let expect = [0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875];
        assert_eq!(g.nodes(), expect);
        assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_grid(-1.0, 64), Err(NlwError::Config(_))));
        assert!(matches!(make_grid(0.0, 64), Err(NlwError::Config(_))));
        assert!(matches!(make_grid(f64::NAN, 64), Err(NlwError::Config(_))));
        assert!(matches!(make_grid(1.0, 3), Err(NlwError::Config(_))));
    }

    #[test]
    fn last_node_lookup() {
        let g = make_grid(1.0, 7).unwrap();
        assert_eq!(g.last_node_within(0.1), None);
        assert_eq!(g.last_node_within(0.125), Some(0));
        assert_eq!(g.last_node_within(0.5), Some(3));
        assert_eq!(g.last_node_within(10.0), Some(6));
    }
}
