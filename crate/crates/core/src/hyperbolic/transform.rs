use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::grid::{HyperbolicGrid, HyperbolicState};
use crate::error::{NlwError, Result};
use crate::linear_prop::Trajectory;
use crate::radial_field::{reduced_derivative, SineTransform};
use crate::scalar::Real;

/// Chain rule used to assemble `Φ_τ` from the standard-coordinate state.
pub const CHAIN_RULE_FORMULA: &str = "Phi_tau = t*phi_t + r*phi_r";

/// Placement of hyperbolic coordinates relative to a trajectory:
/// `t = t0·e^τ cosh s`, `r = t0·e^τ sinh s`, where `t` is measured from the
/// cone vertex sitting at trajectory time `vertex`.
///
/// With `t0 = 1` and `vertex = t_start − 1` this is the usual normalization
/// with data on `t = 1`; a larger `t0` keeps the same structure while
/// shrinking the data in `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperbolicFrame<T> {
    pub t0: T,
    pub vertex: T,
}

impl<T: Real> HyperbolicFrame<T> {
    /// Frame whose `τ = 0` hyperboloid touches `r = 0` at trajectory time
    /// `t_data`.
    pub fn anchored(t_data: T, t0: T) -> Self {
        Self {
            t0,
            vertex: t_data - t0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0.is_finite() && self.t0 > T::zero() && self.vertex.is_finite()) {
            return Err(NlwError::Config(format!(
                "hyperbolic frame needs t0 > 0, got {}",
                self.t0
            )));
        }
        Ok(())
    }

    /// `(t, r)` relative to the vertex.
    pub fn point(&self, tau: T, s: T) -> (T, T) {
        let rho = self.t0 * tau.exp();
        (rho * s.cosh(), rho * s.sinh())
    }

    pub fn trajectory_time(&self, t: T) -> T {
        t + self.vertex
    }
}

/// How stored states are interpolated onto hyperboloids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Linear in `t` and in `r`; error `O(Δt² + Δr²)` in the output stride.
    Bilinear,
    /// Cubic Hermite in `t` (using the stored and spectrally derived time
    /// derivatives) and four-point Lagrange in `r`; error `O(Δt⁴ + Δr⁴)`.
    #[default]
    HermiteCubic,
}

#[derive(Clone, Copy)]
pub(crate) enum Component {
    Phi,
    PhiT,
    PhiR,
    PhiTT,
    PhiRT,
}

impl Component {
    fn time_derivative(self) -> Self {
        match self {
            Component::Phi => Component::PhiT,
            Component::PhiT => Component::PhiTT,
            Component::PhiR => Component::PhiRT,
            _ => unreachable!("second derivatives are not interpolated"),
        }
    }

    /// `φ` and its time derivatives are odd under reflection at both walls,
    /// `r`-derivatives are even.
    fn odd(self) -> bool {
        matches!(self, Component::Phi | Component::PhiT | Component::PhiTT)
    }
}

/// Node values `j = 0..=N` of one stored state and its derived fields.
struct NodeTable<T> {
    phi: Vec<T>,
    phit: Vec<T>,
    phir: Vec<T>,
    phitt: Vec<T>,
    phirt: Vec<T>,
}

impl<T: Copy> NodeTable<T> {
    fn get(&self, c: Component) -> &[T] {
        match c {
            Component::Phi => &self.phi,
            Component::PhiT => &self.phit,
            Component::PhiR => &self.phir,
            Component::PhiTT => &self.phitt,
            Component::PhiRT => &self.phirt,
        }
    }
}

/// `(t, r)` sampling of a stored trajectory. States are prepared lazily and
/// only a few are kept, so callers should sweep `t` monotonically.
pub(crate) struct Sampler<'a, T: Real> {
    traj: &'a Trajectory<T>,
    times: Vec<T>,
    tr: SineTransform<T>,
    mode: Interpolation,
    cache: RefCell<HashMap<usize, Rc<NodeTable<T>>>>,
}

impl<'a, T: Real> Sampler<'a, T> {
    pub(crate) fn new(traj: &'a Trajectory<T>, mode: Interpolation) -> Result<Self> {
        let Some(g) = traj.grid() else {
            return Err(NlwError::InsufficientData("empty trajectory".into()));
        };
        Ok(Self {
            traj,
            times: traj.times(),
            tr: SineTransform::new(g.n()),
            mode,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub(crate) fn require(&self, from: T, to: T) -> Result<()> {
        let a = self.times[0];
        let b = *self.times.last().expect("nonempty");
        let slack = T::lit(1e-9) * (T::one() + b.abs());
        if from < a - slack || to > b + slack {
            return Err(NlwError::Coverage {
                from: from.as_f64(),
                to: to.as_f64(),
                have_from: a.as_f64(),
                have_to: b.as_f64(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_radius(&self, r: T) -> Result<()> {
        let r_max = self.traj.grid().expect("nonempty").r_max();
        if r > r_max {
            return Err(NlwError::Config(format!(
                "hyperboloid reaches r = {r}, beyond the trajectory grid (r_max = {r_max})"
            )));
        }
        Ok(())
    }

    fn time_bracket(&self, t: T) -> (usize, T) {
        let k = self.times.len();
        if k == 1 {
            return (0, T::zero());
        }
        let i = self.times.partition_point(|&x| x <= t).clamp(1, k - 1) - 1;
        let w = (t - self.times[i]) / (self.times[i + 1] - self.times[i]);
        (i, w.max(T::zero()).min(T::one()))
    }

    fn table(&self, i: usize) -> Rc<NodeTable<T>> {
        let mut cache = self.cache.borrow_mut();
        if let Some(t) = cache.get(&i) {
            return Rc::clone(t);
        }
        cache.retain(|&k, _| k + 2 >= i && k <= i + 2);
        let st = &self.traj.states()[i];
        let g = st.grid();
        let mu = T::lit(self.traj.meta().nonlinearity);
        let (c, ct) = self.tr.forward_pair(st.u.phi(), st.ut.phi());
        let phir = reduced_derivative(&self.tr, &c, g);
        let phirt = reduced_derivative(&self.tr, &ct, g);
        let lap: Vec<T> = c
            .iter()
            .enumerate()
            .map(|(k, &ck)| {
                let xi = g.frequency(k);
                -xi * xi * ck
            })
            .collect();
        let phirr = self.tr.inverse(&lap);
        let padded = |v: &[T]| {
            let mut out = Vec::with_capacity(v.len() + 2);
            out.push(T::zero());
            out.extend_from_slice(v);
            out.push(T::zero());
            out
        };
        let mut phitt = padded(&phirr);
        for (j, &p) in st.u.phi().iter().enumerate() {
            let r = g.node(j);
            phitt[j + 1] = phitt[j + 1] - mu * p * p * p / (r * r);
        }
        let table = Rc::new(NodeTable {
            phi: padded(st.u.phi()),
            phit: padded(st.ut.phi()),
            phir,
            phitt,
            phirt,
        });
        cache.insert(i, Rc::clone(&table));
        table
    }

    /// Node value with the wall reflections of the sine basis.
    fn node(&self, tab: &NodeTable<T>, j: isize, c: Component) -> T {
        let v = tab.get(c);
        let big_n = (v.len() - 1) as isize;
        let (k, flip) = if j < 0 {
            (-j, true)
        } else if j > big_n {
            (2 * big_n - j, true)
        } else {
            (j, false)
        };
        let x = v[k as usize];
        if flip && c.odd() {
            -x
        } else {
            x
        }
    }

    fn in_space(&self, i: usize, r: T, c: Component) -> T {
        let tab = self.table(i);
        let g = self.traj.states()[i].grid();
        let big_n = g.n() + 1;
        let x = r / g.dr();
        let j = x.floor().to_usize().unwrap_or(0).min(big_n - 1);
        let w = x - T::from_count(j);
        let j = j as isize;
        match self.mode {
            Interpolation::Bilinear => {
                let a = self.node(&tab, j, c);
                let b = self.node(&tab, j + 1, c);
                a + (b - a) * w
            }
            Interpolation::HermiteCubic => {
                let one = T::one();
                let two = T::lit(2.0);
                let six = T::lit(6.0);
                let lm = -w * (w - one) * (w - two) / six;
                let l0 = (w + one) * (w - one) * (w - two) / two;
                let l1 = -(w + one) * w * (w - two) / two;
                let l2 = (w + one) * w * (w - one) / six;
                lm * self.node(&tab, j - 1, c)
                    + l0 * self.node(&tab, j, c)
                    + l1 * self.node(&tab, j + 1, c)
                    + l2 * self.node(&tab, j + 2, c)
            }
        }
    }

    /// Value at trajectory time `t` and radius `r`.
    pub(crate) fn sample(&self, t: T, r: T, c: Component) -> T {
        let (i, w) = self.time_bracket(t);
        let a = self.in_space(i, r, c);
        if w == T::zero() || self.times.len() == 1 {
            return a;
        }
        let b = self.in_space(i + 1, r, c);
        match self.mode {
            Interpolation::Bilinear => a + (b - a) * w,
            Interpolation::HermiteCubic => {
                let h = self.times[i + 1] - self.times[i];
                let d = c.time_derivative();
                let da = self.in_space(i, r, d) * h;
                let db = self.in_space(i + 1, r, d) * h;
                let (w2, w3) = (w * w, w * w * w);
                let two = T::lit(2.0);
                let three = T::lit(3.0);
                (two * w3 - three * w2 + T::one()) * a
                    + (w3 - two * w2 + w) * da
                    + (three * w2 - two * w3) * b
                    + (w3 - w2) * db
            }
        }
    }
}

/// Samples `Φ(τ, s) = s·ũ(τ, s) = φ(t, r)` on the hyperboloid `τ`, with
/// `Φ_τ` assembled by the chain rule (see [`CHAIN_RULE_FORMULA`]), using the
/// default [`Interpolation`].
///
/// Errors when the hyperboloid leaves the stored time range or the grid.
pub fn to_hyperbolic<T: Real>(
    traj: &Trajectory<T>,
    grid: &HyperbolicGrid<T>,
    frame: &HyperbolicFrame<T>,
    tau: T,
) -> Result<HyperbolicState<T>> {
    to_hyperbolic_with(traj, grid, frame, tau, Interpolation::default())
}

pub fn to_hyperbolic_with<T: Real>(
    traj: &Trajectory<T>,
    grid: &HyperbolicGrid<T>,
    frame: &HyperbolicFrame<T>,
    tau: T,
    mode: Interpolation,
) -> Result<HyperbolicState<T>> {
    frame.validate()?;
    let sampler = Sampler::new(traj, mode)?;
    let (t_lo, _) = frame.point(tau, T::zero());
    let (t_hi, r_hi) = frame.point(tau, grid.s_max());
    sampler.require(frame.trajectory_time(t_lo), frame.trajectory_time(t_hi))?;
    sampler.require_radius(r_hi)?;

    let mut v = Vec::with_capacity(grid.m());
    let mut vt = Vec::with_capacity(grid.m());
    for s in grid.nodes() {
        let (t, r) = frame.point(tau, s);
        let tt = frame.trajectory_time(t);
        v.push(sampler.sample(tt, r, Component::Phi));
        let phit = sampler.sample(tt, r, Component::PhiT);
        let phir = sampler.sample(tt, r, Component::PhiR);
        vt.push(t * phit + r * phir);
    }
    Ok(HyperbolicState::from_parts(tau, *grid, v, vt))
}

/// Initial data on the hyperboloid `τ = 0`.
pub fn hyperboloid_data<T: Real>(
    traj: &Trajectory<T>,
    grid: &HyperbolicGrid<T>,
    frame: &HyperbolicFrame<T>,
) -> Result<HyperbolicState<T>> {
    to_hyperbolic(traj, grid, frame, T::zero())
}
