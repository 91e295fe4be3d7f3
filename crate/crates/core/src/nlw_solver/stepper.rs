use crate::error::{NlwError, Result};
use crate::linear_prop::DriftTable;
use crate::radial_field::{FieldState, RadialField, RadialGrid, SineTransform};
use crate::scalar::Real;

/// Strang splitting for `φ_tt = φ_rr − μ φ³ w(r)` with a fixed step.
///
/// For the standard equation `w(r) = 1/r²` (the kick `u_t ← u_t − h·u³`
/// written for `φ = r·u`). Other weights serve the hyperbolic reformulation.
#[derive(Debug, Clone)]
pub struct Stepper<T: Real> {
    grid: RadialGrid<T>,
    dt: T,
    mu: T,
    tr: SineTransform<T>,
    drift: DriftTable<T>,
    /// `μ·w(r_i)`.
    kick_weight: Vec<T>,
}

impl<T: Real> Stepper<T> {
    pub fn new(grid: RadialGrid<T>, dt: T, mu: T) -> Self {
        let weight = grid.nodes().into_iter().map(|r| mu / (r * r)).collect();
        Self::with_weight(grid, dt, mu, weight)
    }

    /// Stepper with an explicit nonlinear weight `μ·w(r_i)` per node.
    pub fn with_weight(grid: RadialGrid<T>, dt: T, mu: T, kick_weight: Vec<T>) -> Self {
        debug_assert_eq!(kick_weight.len(), grid.n());
        Self {
            grid,
            dt,
            mu,
            tr: SineTransform::new(grid.n()),
            drift: DriftTable::new(&grid, dt),
            kick_weight,
        }
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn grid(&self) -> &RadialGrid<T> {
        &self.grid
    }

    pub fn nonlinearity(&self) -> T {
        self.mu
    }

    #[inline]
    fn kick(&self, phi: &[T], phit: &mut [T], h: T) {
        if self.mu == T::zero() {
            return;
        }
        for ((pt, &p), &w) in phit.iter_mut().zip(phi).zip(&self.kick_weight) {
            *pt = *pt - h * w * p * p * p;
        }
    }

    /// Coupled kicks: `w` sees `w³`; `v` sees `v³ + 3v²w + 3vw²`, both at the
    /// same instant (positions do not move during a kick).
    #[inline]
    fn kick_coupled(&self, v: &[T], vt: &mut [T], w: &[T], wt: &mut [T], h: T) {
        if self.mu == T::zero() {
            return;
        }
        let three = T::lit(3.0);
        for i in 0..v.len() {
            let (a, b) = (v[i], w[i]);
            let k = h * self.kick_weight[i];
            wt[i] = wt[i] - k * b * b * b;
            vt[i] = vt[i] - k * (a * a * a + three * a * a * b + three * a * b * b);
        }
    }

    fn drift(&self, phi: &mut Vec<T>, phit: &mut Vec<T>) {
        let (mut c, mut ct) = self.tr.forward_pair(phi, phit);
        self.drift.apply(&mut c, &mut ct);
        let (p, pt) = self.tr.inverse_pair(&c, &ct);
        *phi = p;
        *phit = pt;
    }

    /// One step in place.
    pub fn advance(&self, phi: &mut Vec<T>, phit: &mut Vec<T>) {
        let half = self.dt * T::lit(0.5);
        self.kick(phi, phit, half);
        self.drift(phi, phit);
        self.kick(phi, phit, half);
    }

    pub fn advance_coupled(
        &self,
        v: &mut Vec<T>,
        vt: &mut Vec<T>,
        w: &mut Vec<T>,
        wt: &mut Vec<T>,
    ) {
        let half = self.dt * T::lit(0.5);
        self.kick_coupled(v, vt, w, wt, half);
        self.drift(w, wt);
        self.drift(v, vt);
        self.kick_coupled(v, vt, w, wt, half);
    }

    pub fn step(&self, st: &FieldState<T>) -> Result<FieldState<T>> {
        let mut phi = st.u.phi().to_vec();
        let mut phit = st.ut.phi().to_vec();
        self.advance(&mut phi, &mut phit);
        let t = st.t + self.dt;
        check_finite("u", &phi, &phit, 1, t)?;
        Ok(FieldState {
            t,
            u: RadialField::from_phi_unchecked(self.grid, phi),
            ut: RadialField::from_phi_unchecked(self.grid, phit),
        })
    }
}

pub(crate) fn check_finite<T: Real>(
    component: &'static str,
    phi: &[T],
    phit: &[T],
    step: u64,
    t: T,
) -> Result<()> {
    let mut finite = true;
    let mut max = T::zero();
    for &x in phi.iter().chain(phit) {
        if !x.is_finite() {
            finite = false;
            max = T::infinity();
            break;
        }
        max = max.max(x.abs());
    }
    if !finite || max > T::lit(1e100).min(T::max_value().sqrt()) {
        return Err(NlwError::Divergence {
            component,
            step,
            t: t.as_f64(),
            max_amplitude: max.as_f64(),
        });
    }
    Ok(())
}

/// One Strang step of the defocusing equation (`μ = 1`); `dt` may be negative.
pub fn step<T: Real>(st: &FieldState<T>, dt: T) -> Result<FieldState<T>> {
    Stepper::new(*st.grid(), dt, T::one()).step(st)
}
