use serde::Serialize;

use super::grid::RadialGrid;
use super::transform::SineTransform;
use crate::error::{NlwError, Result};
use crate::scalar::Real;

/// Samples of the reduced field `φ(r_i) = r_i·u(r_i)` on the interior nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialField<T> {
    grid: RadialGrid<T>,
    phi: Vec<T>,
}

impl<T: Real> RadialField<T> {
    pub fn zeros(grid: RadialGrid<T>) -> Self {
        Self {
            grid,
            phi: vec![T::zero(); grid.n()],
        }
    }

    /// Wraps samples of `φ`; rejects wrong lengths and non-finite entries.
    pub fn from_phi(grid: RadialGrid<T>, phi: Vec<T>) -> Result<Self> {
        if phi.len() != grid.n() {
            return Err(NlwError::Config(format!(
                "field has {} samples but the grid has {} nodes",
                phi.len(),
                grid.n()
            )));
        }
        if let Some(i) = phi.iter().position(|x| !x.is_finite()) {
            return Err(NlwError::Config(format!("non-finite sample at node {i}")));
        }
        Ok(Self { grid, phi })
    }

    /// Samples a radial profile `u(r)`.
    pub fn from_profile(grid: RadialGrid<T>, u: impl Fn(T) -> T) -> Self {
        let phi = (0..grid.n())
            .map(|i| {
                let r = grid.node(i);
                r * u(r)
            })
            .collect();
        Self { grid, phi }
    }

    /// Samples the reduced profile `φ(r)` directly.
    pub fn from_reduced_profile(grid: RadialGrid<T>, phi: impl Fn(T) -> T) -> Self {
        let phi = (0..grid.n()).map(|i| phi(grid.node(i))).collect();
        Self { grid, phi }
    }

    pub(crate) fn from_phi_unchecked(grid: RadialGrid<T>, phi: Vec<T>) -> Self {
        debug_assert_eq!(phi.len(), grid.n());
        Self { grid, phi }
    }

    #[inline]
    pub fn grid(&self) -> &RadialGrid<T> {
        &self.grid
    }

    #[inline]
    pub fn phi(&self) -> &[T] {
        &self.phi
    }

    #[inline]
    pub fn phi_mut(&mut self) -> &mut [T] {
        &mut self.phi
    }

    pub fn into_phi(self) -> Vec<T> {
        self.phi
    }

    /// `u(r_i) = φ(r_i)/r_i` at every interior node.
    pub fn u_values(&self) -> Vec<T> {
        self.phi
            .iter()
            .enumerate()
            .map(|(i, &p)| p / self.grid.node(i))
            .collect()
    }

    /// `u(0)` from the two innermost nodes.
    ///
    /// `u` is even in `r`, so with `r_2 = 2 r_1` the combination
    /// `(4u(r_1) − u(r_2))/3` cancels the `r²` term and is accurate to `O(r_1⁴)`.
    pub fn u_at_origin(&self) -> T {
        let u1 = self.phi[0] / self.grid.node(0);
        let u2 = self.phi[1] / self.grid.node(1);
        (T::lit(4.0) * u1 - u2) / T::lit(3.0)
    }

    pub fn is_finite(&self) -> bool {
        self.phi.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> T {
        self.phi.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn scaled(&self, a: T) -> Self {
        Self {
            grid: self.grid,
            phi: self.phi.iter().map(|&x| a * x).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self {
            grid: self.grid,
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self {
            grid: self.grid,
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub(crate) fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(NlwError::GridMismatch);
        }
        Ok(())
    }

    /// `‖u‖²_{L²(R³)} = 4π ∫ φ² dr` (trapezoid; equals the sine-space form exactly).
    pub fn l2_norm_sq(&self) -> T {
        let s = self.phi.iter().fold(T::zero(), |acc, &x| acc + x * x);
        T::lit(4.0) * T::PI() * s * self.grid.dr()
    }

    pub fn l2_norm(&self) -> T {
        self.l2_norm_sq().sqrt()
    }

    /// Largest node radius where `|φ|` exceeds `tol·max|φ|` (zero for the zero field).
    pub fn support_radius(&self, rel_tol: T) -> T {
        let m = self.max_abs();
        if m == T::zero() {
            return T::zero();
        }
        let cut = rel_tol * m;
        match self.phi.iter().rposition(|x| x.abs() > cut) {
            Some(i) => self.grid.node(i),
            None => T::zero(),
        }
    }
}

/// Phase-space point `(u, u_t)` at time `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldState<T> {
    pub t: T,
    pub u: RadialField<T>,
    pub ut: RadialField<T>,
}

impl<T: Real> FieldState<T> {
    pub fn new(t: T, u: RadialField<T>, ut: RadialField<T>) -> Result<Self> {
        u.check_grid(&ut)?;
        if !t.is_finite() {
            return Err(NlwError::Config("state time must be finite".into()));
        }
        Ok(Self { t, u, ut })
    }

    pub fn zeros(grid: RadialGrid<T>) -> Self {
        Self {
            t: T::zero(),
            u: RadialField::zeros(grid),
            ut: RadialField::zeros(grid),
        }
    }

    #[inline]
    pub fn grid(&self) -> &RadialGrid<T> {
        self.u.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.u.is_finite() && self.ut.is_finite()
    }

    pub fn max_abs(&self) -> T {
        self.u.max_abs().max(self.ut.max_abs())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            t: self.t,
            u: self.u.try_add(&other.u)?,
            ut: self.ut.try_add(&other.ut)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            t: self.t,
            u: self.u.try_sub(&other.u)?,
            ut: self.ut.try_sub(&other.ut)?,
        })
    }

    pub fn scaled(&self, a: T) -> Self {
        Self {
            t: self.t,
            u: self.u.scaled(a),
            ut: self.ut.scaled(a),
        }
    }
}

/// Sine-series coefficients `c_k` with `φ(r) = Σ_k c_k sin(ξ_k r)`, `ξ_k = kπ/r_max`.
///
/// Normalization: the sine transform `φ̂(ξ) = ∫_0^∞ sin(rξ) φ(r) dr` of the
/// represented field is `φ̂(ξ_k) = c_k·r_max/2`, and the 3D Fourier transform
/// `û(ξ) = ∫ u(x) e^{-ix·ξ} dx` of the radial function is `û(ξ) = 4π φ̂(ξ)/ξ`.
/// Grid and coefficient quadratic forms agree exactly:
/// `dr·Σ_i φ_i² = (r_max/2)·Σ_k c_k²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralField<T> {
    grid: RadialGrid<T>,
    coeff: Vec<T>,
}

impl<T: Real> SpectralField<T> {
    pub fn from_coefficients(grid: RadialGrid<T>, coeff: Vec<T>) -> Result<Self> {
        if coeff.len() != grid.n() {
            return Err(NlwError::Config(format!(
                "{} coefficients for a grid with {} modes",
                coeff.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, coeff })
    }

    #[inline]
    pub fn grid(&self) -> &RadialGrid<T> {
        &self.grid
    }

    #[inline]
    pub fn coeff(&self) -> &[T] {
        &self.coeff
    }

    /// Samples of the 3D Fourier transform `û(ξ_k)`.
    pub fn fourier_transform(&self) -> Vec<T> {
        let half_l = self.grid.r_max() * T::lit(0.5);
        let four_pi = T::lit(4.0) * T::PI();
        self.coeff
            .iter()
            .enumerate()
            .map(|(k, &c)| four_pi * c * half_l / self.grid.frequency(k))
            .collect()
    }

    /// `(r_max/2)·Σ c_k²`, equal to `∫ φ² dr` on the grid.
    pub fn quadratic_form(&self) -> T {
        self.coeff.iter().fold(T::zero(), |a, &c| a + c * c) * self.grid.r_max() * T::lit(0.5)
    }
}

pub fn to_spectral<T: Real>(f: &RadialField<T>) -> SpectralField<T> {
    let tr = SineTransform::new(f.grid().n());
    SpectralField {
        grid: *f.grid(),
        coeff: tr.forward(f.phi()),
    }
}

pub fn from_spectral<T: Real>(c: &SpectralField<T>) -> RadialField<T> {
    let tr = SineTransform::new(c.grid().n());
    RadialField::from_phi_unchecked(*c.grid(), tr.inverse(c.coeff()))
}

/// `φ_r` at all nodes `r = 0, dr, …, r_max` (length `n + 2`), differentiating
/// the sine series term by term. The first entry is `u(0)`.
pub fn reduced_derivative<T: Real>(
    tr: &SineTransform<T>,
    coeff: &[T],
    grid: &RadialGrid<T>,
) -> Vec<T> {
    let b: Vec<T> = coeff
        .iter()
        .enumerate()
        .map(|(k, &c)| c * grid.frequency(k))
        .collect();
    tr.cosine_sums(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial_field::make_grid;

    #[test]
    fn single_mode_has_single_coefficient() {
        let g = make_grid(10.0, 127).unwrap();
        let f =
            RadialField::from_reduced_profile(g, |r: f64| (std::f64::consts::PI * r / 10.0).sin());
        let c = to_spectral(&f);
        assert!((c.coeff()[0] - 1.0).abs() < 1e-13);
        assert!(c.coeff()[1..].iter().all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn parseval_is_exact() {
        let g = make_grid(3.0, 200).unwrap();
        let f = RadialField::from_reduced_profile(g, |r: f64| r * (3.0 - r) * (1.0 + r.sin()));
        let grid_form = f.phi().iter().map(|x| x * x).sum::<f64>() * g.dr();
        let spec_form = to_spectral(&f).quadratic_form();
        assert!((grid_form - spec_form).abs() <= 1e-12 * grid_form);
    }

    #[test]
    fn origin_value_is_fourth_order() {
        for &n in &[255usize, 511] {
            let g = make_grid(8.0, n).unwrap();
            let f = RadialField::from_profile(g, |r: f64| (-r * r).exp());
            let err = (f.u_at_origin() - 1.0).abs();
            assert!(err < 10.0 * g.dr().powi(4), "n={n} err={err}");
        }
    }

    #[test]
    fn derivative_matches_analytic() {
        let g = make_grid(12.0, 1023).unwrap();
        let f = RadialField::from_profile(g, |r: f64| (-r * r).exp());
        let tr = SineTransform::new(g.n());
        let d = reduced_derivative(&tr, &tr.forward(f.phi()), &g);
        assert!((d[0] - 1.0).abs() < 1e-10);
        for (i, &di) in d.iter().enumerate().take(g.n() + 1).skip(1) {
            let r = i as f64 * g.dr();
            let exact = (1.0 - 2.0 * r * r) * (-r * r).exp();
            assert!((di - exact).abs() < 1e-10, "r={r}");
        }
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = RadialField::<f64>::zeros(make_grid(1.0, 15).unwrap());
        let b = RadialField::<f64>::zeros(make_grid(2.0, 15).unwrap());
        assert_eq!(a.try_add(&b), Err(NlwError::GridMismatch));
        assert!(FieldState::new(0.0, a, b).is_err());
    }
}
