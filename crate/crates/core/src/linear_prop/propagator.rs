use crate::radial_field::{FieldState, RadialField, RadialGrid, SineTransform};
use crate::scalar::Real;

/// Exact free wave propagator `S(t)` in the sine basis.
///
/// Each mode obeys `ĉ'' = −ξ²ĉ`, so
/// `ĉ(t) = cos(ξt)ĉ₀ + sin(ξt)/ξ·ĉ₁` and `ĉ_t(t) = −ξ sin(ξt)ĉ₀ + cos(ξt)ĉ₁`.
#[derive(Debug, Clone)]
pub struct FreePropagator<T: Real> {
    grid: RadialGrid<T>,
    tr: SineTransform<T>,
}

impl<T: Real> FreePropagator<T> {
    pub fn new(grid: RadialGrid<T>) -> Self {
        Self {
            grid,
            tr: SineTransform::new(grid.n()),
        }
    }

    pub fn grid(&self) -> &RadialGrid<T> {
        &self.grid
    }

    pub fn transform(&self) -> &SineTransform<T> {
        &self.tr
    }

    /// Rotates coefficient pairs in place by time `t`.
    pub fn rotate(&self, c: &mut [T], ct: &mut [T], t: T) {
        for k in 0..c.len() {
            let xi = self.grid.frequency(k);
            let (s, co) = (xi * t).sin_cos();
            let a = c[k];
            let b = ct[k];
            c[k] = co * a + s / xi * b;
            ct[k] = -xi * s * a + co * b;
        }
    }

    pub fn evolve(&self, st: &FieldState<T>, t: T) -> FieldState<T> {
        let (mut c, mut ct) = self.tr.forward_pair(st.u.phi(), st.ut.phi());
        self.rotate(&mut c, &mut ct, t);
        let (phi, phit) = self.tr.inverse_pair(&c, &ct);
        FieldState {
            t: st.t + t,
            u: RadialField::from_phi_unchecked(self.grid, phi),
            ut: RadialField::from_phi_unchecked(self.grid, phit),
        }
    }
}

/// Precomputed rotation for a fixed step `dt`.
#[derive(Debug, Clone)]
pub struct DriftTable<T> {
    cos: Vec<T>,
    sin_over_xi: Vec<T>,
    xi_sin: Vec<T>,
}

impl<T: Real> DriftTable<T> {
    pub fn new(grid: &RadialGrid<T>, dt: T) -> Self {
        let n = grid.n();
        let mut cos = Vec::with_capacity(n);
        let mut sin_over_xi = Vec::with_capacity(n);
        let mut xi_sin = Vec::with_capacity(n);
        for k in 0..n {
            let xi = grid.frequency(k);
            let (s, c) = (xi * dt).sin_cos();
            cos.push(c);
            sin_over_xi.push(s / xi);
            xi_sin.push(xi * s);
        }
        Self {
            cos,
            sin_over_xi,
            xi_sin,
        }
    }

    #[inline]
    pub fn apply(&self, c: &mut [T], ct: &mut [T]) {
        for k in 0..c.len() {
            let a = c[k];
            let b = ct[k];
            c[k] = self.cos[k] * a + self.sin_over_xi[k] * b;
            ct[k] = -self.xi_sin[k] * a + self.cos[k] * b;
        }
    }
}

/// `S(t)` applied to `st`; the result carries time stamp `st.t + t`.
pub fn free_evolve<T: Real>(st: &FieldState<T>, t: T) -> FieldState<T> {
    FreePropagator::new(*st.grid()).evolve(st, t)
}
