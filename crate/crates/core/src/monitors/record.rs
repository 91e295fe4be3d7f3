use serde::Serialize;

use super::config::MonitorConfig;
use super::kernels::{ball_distance_gradient, ball_newton_potential};
use crate::error::Result;
use crate::radial_field::{
    hs_norm_sq_coeff, lp_norm_pow, reduced_derivative, weighted_l4, FieldState, RadialField,
    RadialGrid, SineTransform, SpectralField,
};
use crate::scalar::Real;

/// Monitored quantities at one output time.
///
/// For direct evolutions `v = u` and `w = 0`; for the coupled system the
/// Morawetz potentials and `E_v` refer to the low-frequency component `v` and
/// every other column to the full solution `u = v + w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticsRecord<T> {
    pub t: T,
    /// Energy of `u`.
    pub energy: T,
    /// Energy of `v`.
    pub energy_v: T,
    pub m1: T,
    pub m2: T,
    pub m3: T,
    pub modified_energy: T,
    pub weighted_l4: T,
    pub local_mass: T,
    pub local_energy: T,
    pub hs_half_u: T,
    pub hs_half_ut: T,
    /// `‖w‖_{L⁴_x}` (coupled runs only).
    pub w_l4: Option<T>,
    /// `‖w‖_{L⁶_x}` (coupled runs only).
    pub w_l6: Option<T>,
}

impl<T: Real> DiagnosticsRecord<T> {
    pub fn is_finite(&self) -> bool {
        [
            self.t,
            self.energy,
            self.energy_v,
            self.m1,
            self.m2,
            self.m3,
            self.modified_energy,
            self.weighted_l4,
            self.local_mass,
            self.local_energy,
            self.hs_half_u,
            self.hs_half_ut,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

/// Which Morawetz potential to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MorawetzKind {
    /// `a = 1/|x|`, weight `c₁`.
    M1,
    /// `a = 1/|x−y|` averaged over `|y| ≤ 2R`, weight `c₂/R³`.
    M2,
    /// `a = χ(|x|/R)/R`, weight `c₃`.
    M3,
}

/// Spectral pieces of one state reused by several monitors.
pub struct StateSpectra<T> {
    /// Sine coefficients of `φ` and `φ_t`.
    pub c: Vec<T>,
    pub ct: Vec<T>,
    /// `φ_r` at nodes `0..=n+1`.
    pub dphi: Vec<T>,
}

/// Precomputed weights for all monitors on one grid.
#[derive(Debug, Clone)]
pub struct Monitor<T: Real> {
    grid: RadialGrid<T>,
    cfg: MonitorConfig<T>,
    tr: SineTransform<T>,
    m2_gradient: Vec<T>,
    m2_newton: Vec<T>,
    m3_chi: Vec<T>,
}

impl<T: Real> Monitor<T> {
    pub fn new(grid: RadialGrid<T>, cfg: MonitorConfig<T>) -> Result<Self> {
        cfg.validate()?;
        let rho = cfg.radius + cfg.radius;
        let nodes = grid.nodes();
        Ok(Self {
            grid,
            cfg,
            tr: SineTransform::new(grid.n()),
            m2_gradient: nodes
                .iter()
                .map(|&r| ball_distance_gradient(r, rho))
                .collect(),
            m2_newton: nodes
                .iter()
                .map(|&r| ball_newton_potential(r, rho))
                .collect(),
            m3_chi: nodes
                .iter()
                .map(|&r| cfg.chi_profile.chi(r / cfg.radius))
                .collect(),
        })
    }

    pub fn config(&self) -> &MonitorConfig<T> {
        &self.cfg
    }

    pub fn grid(&self) -> &RadialGrid<T> {
        &self.grid
    }

    pub fn transform(&self) -> &SineTransform<T> {
        &self.tr
    }

    pub fn spectra(&self, st: &FieldState<T>) -> StateSpectra<T> {
        let (c, ct) = self.tr.forward_pair(st.u.phi(), st.ut.phi());
        let dphi = reduced_derivative(&self.tr, &c, &self.grid);
        StateSpectra { c, ct, dphi }
    }

    /// `E = ½∫u_t² + ½∫|∇u|² + ¼∫u⁴`.
    ///
    /// In reduced form `4π[½∫φ_t² + ½∫φ_r² + ¼∫φ⁴/r²] dr`. The gradient term is
    /// evaluated as `(r_max/2)Σ ξ_k² c_k²`, which equals the trapezoid rule for
    /// `∫φ_r²` with the spectral derivative sampled at all nodes including the
    /// endpoints.
    pub fn energy_from(&self, st: &FieldState<T>, sp: &StateSpectra<T>) -> T {
        let dr = self.grid.dr();
        let mut kin = T::zero();
        let mut quart = T::zero();
        for (i, (&p, &pt)) in st.u.phi().iter().zip(st.ut.phi()).enumerate() {
            let r = self.grid.node(i);
            kin = kin + pt * pt;
            let q = p * p / r;
            quart = quart + q * q;
        }
        let grad = self.gradient_sq_from(sp);
        let four_pi = T::lit(4.0) * T::PI();
        four_pi * (T::lit(0.5) * kin * dr + T::lit(0.25) * quart * dr) + T::lit(0.5) * grad
    }

    /// `‖∇u‖²_{L²}`.
    pub fn gradient_sq_from(&self, sp: &StateSpectra<T>) -> T {
        let s = sp.c.iter().enumerate().fold(T::zero(), |acc, (k, &c)| {
            let xi = self.grid.frequency(k);
            acc + xi * xi * c * c
        });
        T::lit(2.0) * T::PI() * self.grid.r_max() * s
    }

    pub fn energy(&self, st: &FieldState<T>) -> T {
        let sp = self.spectra(st);
        self.energy_from(st, &sp)
    }

    /// Unweighted potential with `a = 1/|x|`: `∫u_t x/|x|·∇u + ∫u_t u/|x| = 4π∫φ_t φ_r dr`.
    pub fn radial_morawetz_from(&self, st: &FieldState<T>, sp: &StateSpectra<T>) -> T {
        let s = st
            .ut
            .phi()
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, &pt)| acc + pt * sp.dphi[i + 1]);
        T::lit(4.0) * T::PI() * (s * self.grid.dr() + origin_correction(&self.grid, sp))
    }

    pub fn morawetz_from(&self, st: &FieldState<T>, sp: &StateSpectra<T>, kind: MorawetzKind) -> T {
        let four_pi = T::lit(4.0) * T::PI();
        let dr = self.grid.dr();
        match kind {
            MorawetzKind::M1 => self.cfg.c1 * self.radial_morawetz_from(st, sp),
            MorawetzKind::M2 => {
                // 4π∫ φ_t [(φ_r − φ/r) G + φ N] dr
                let mut s = T::zero();
                for (i, (&p, &pt)) in st.u.phi().iter().zip(st.ut.phi()).enumerate() {
                    let r = self.grid.node(i);
                    let radial = sp.dphi[i + 1] - p / r;
                    s = s + pt * (radial * self.m2_gradient[i] + p * self.m2_newton[i]);
                }
                let r3 = self.cfg.radius.powi(3);
                self.cfg.c2 / r3 * four_pi * s * dr
            }
            MorawetzKind::M3 => {
                // (1/R)·4π∫ χ(r/R) r φ_t φ_r dr
                let mut s = T::zero();
                for (i, &pt) in st.ut.phi().iter().enumerate() {
                    let r = self.grid.node(i);
                    s = s + self.m3_chi[i] * r * pt * sp.dphi[i + 1];
                }
                self.cfg.c3 / self.cfg.radius * four_pi * s * dr
            }
        }
    }

    pub fn morawetz(&self, st: &FieldState<T>, kind: MorawetzKind) -> T {
        let sp = self.spectra(st);
        self.morawetz_from(st, &sp, kind)
    }

    /// `∫ v³ w dx`.
    pub fn coupling(&self, v: &RadialField<T>, w: &RadialField<T>) -> T {
        let s = v
            .phi()
            .iter()
            .zip(w.phi())
            .enumerate()
            .fold(T::zero(), |acc, (i, (&a, &b))| {
                let r = self.grid.node(i);
                acc + a * a * a * b / (r * r)
            });
        T::lit(4.0) * T::PI() * s * self.grid.dr()
    }

    /// `ℰ = E(v) + M₁ + M₂ + M₃ + ∫v³w`.
    pub fn modified_energy(&self, v: &FieldState<T>, w: &FieldState<T>) -> T {
        let sp = self.spectra(v);
        self.energy_from(v, &sp)
            + self.morawetz_from(v, &sp, MorawetzKind::M1)
            + self.morawetz_from(v, &sp, MorawetzKind::M2)
            + self.morawetz_from(v, &sp, MorawetzKind::M3)
            + self.coupling(&v.u, &w.u)
    }

    /// `(R^{-3}∫_{|x|≤R} u², R^{-1}∫_{|x|≤R} |∇u|² + u_t²)` at the configured `R`.
    pub fn local_quantities(&self, st: &FieldState<T>, sp: &StateSpectra<T>) -> (T, T) {
        let (mass, energy) = self.local_integrands(st, sp);
        let radius = self.cfg.radius;
        let m = integrate_to(&mass, self.grid.dr(), radius);
        let e = integrate_to(&energy, self.grid.dr(), radius);
        (m / radius.powi(3), e / radius)
    }

    /// Integrands of the local mass and local energy at nodes `0..=n`
    /// (`4πφ²` and `4π[(φ_r − φ/r)² + φ_t²]`, both in `dr` measure).
    pub(crate) fn local_integrands(
        &self,
        st: &FieldState<T>,
        sp: &StateSpectra<T>,
    ) -> (Vec<T>, Vec<T>) {
        let four_pi = T::lit(4.0) * T::PI();
        let n = self.grid.n();
        let mut mass = Vec::with_capacity(n + 1);
        let mut energy = Vec::with_capacity(n + 1);
        mass.push(T::zero());
        energy.push(T::zero());
        for i in 0..n {
            let r = self.grid.node(i);
            let p = st.u.phi()[i];
            let pt = st.ut.phi()[i];
            let radial = sp.dphi[i + 1] - p / r;
            mass.push(four_pi * p * p);
            energy.push(four_pi * (radial * radial + pt * pt));
        }
        (mass, energy)
    }

    /// Full record for `v` (and the optional high-frequency partner `w`).
    pub fn record(&self, v: &FieldState<T>, w: Option<&FieldState<T>>) -> DiagnosticsRecord<T> {
        let sp_v = self.spectra(v);
        let energy_v = self.energy_from(v, &sp_v);
        let m1 = self.morawetz_from(v, &sp_v, MorawetzKind::M1);
        let m2 = self.morawetz_from(v, &sp_v, MorawetzKind::M2);
        let m3 = self.morawetz_from(v, &sp_v, MorawetzKind::M3);
        let coupling = w.map_or(T::zero(), |w| self.coupling(&v.u, &w.u));
        let modified_energy = energy_v + m1 + m2 + m3 + coupling;

        let (full, sp_full);
        let (u, sp_u) = match w {
            Some(w) => {
                full = FieldState {
                    t: v.t,
                    u: RadialField::from_phi_unchecked(
                        self.grid,
                        v.u.phi()
                            .iter()
                            .zip(w.u.phi())
                            .map(|(&a, &b)| a + b)
                            .collect(),
                    ),
                    ut: RadialField::from_phi_unchecked(
                        self.grid,
                        v.ut.phi()
                            .iter()
                            .zip(w.ut.phi())
                            .map(|(&a, &b)| a + b)
                            .collect(),
                    ),
                };
                sp_full = self.spectra(&full);
                (&full, &sp_full)
            }
            None => (v, &sp_v),
        };
        let energy = if w.is_some() {
            self.energy_from(u, sp_u)
        } else {
            energy_v
        };
        let (local_mass, local_energy) = self.local_quantities(u, sp_u);
        let g = self.grid;
        let half = T::lit(0.5);
        let hs_half_u = hs_norm_sq_coeff(
            &SpectralField::from_coefficients(g, sp_u.c.clone()).expect("sized"),
            half,
        )
        .sqrt();
        let hs_half_ut = hs_norm_sq_coeff(
            &SpectralField::from_coefficients(g, sp_u.ct.clone()).expect("sized"),
            -half,
        )
        .sqrt();
        DiagnosticsRecord {
            t: v.t,
            energy,
            energy_v,
            m1,
            m2,
            m3,
            modified_energy,
            weighted_l4: weighted_l4(&u.u),
            local_mass,
            local_energy,
            hs_half_u,
            hs_half_ut,
            w_l4: w.map(|w| lp_norm_pow(&w.u, T::lit(4.0)).powf(T::lit(0.25))),
            w_l6: w.map(|w| lp_norm_pow(&w.u, T::lit(6.0)).powf(T::one() / T::lit(6.0))),
        }
    }
}

/// Endpoint term of the Euler–Maclaurin expansion for `∫_0 φ_t φ_r dr`.
///
/// The integrand is odd in `r` with slope `u(0)·u_t(0)` at the origin, so the
/// plain trapezoid rule is only second order; adding `(dr²/12)·u(0)·u_t(0)`
/// leaves an `O(dr⁴)` error.
pub(crate) fn origin_correction<T: Real>(grid: &RadialGrid<T>, sp: &StateSpectra<T>) -> T {
    let ut0 = sp
        .ct
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, &c)| acc + c * grid.frequency(k));
    let dr = grid.dr();
    dr * dr / T::lit(12.0) * sp.dphi[0] * ut0
}

/// Trapezoid integral of node samples `f[0..=n]` (`f[0]` at `r = 0`) over
/// `[0, upto]`, with a linearly interpolated partial last cell.
pub(crate) fn integrate_to<T: Real>(f: &[T], dr: T, upto: T) -> T {
    if upto <= T::zero() {
        return T::zero();
    }
    let cells = upto / dr;
    let full = cells.floor().to_usize().unwrap_or(0).min(f.len() - 1);
    let mut s = T::zero();
    for i in 0..full {
        s = s + (f[i] + f[i + 1]) * T::lit(0.5) * dr;
    }
    let frac = cells - T::from_count(full);
    if frac > T::zero() && full + 1 < f.len() {
        let end = f[full] + (f[full + 1] - f[full]) * frac;
        s = s + (f[full] + end) * T::lit(0.5) * frac * dr;
    }
    s
}

/// `E(st)` with default monitor weights.
pub fn energy<T: Real>(st: &FieldState<T>) -> T {
    Monitor::new(*st.grid(), MonitorConfig::default())
        .expect("default config is valid")
        .energy(st)
}

pub fn morawetz_potential<T: Real>(
    st: &FieldState<T>,
    kind: MorawetzKind,
    cfg: &MonitorConfig<T>,
) -> Result<T> {
    Ok(Monitor::new(*st.grid(), *cfg)?.morawetz(st, kind))
}

/// Route through `u = φ/r` and `u_r = (φ_r − φ/r)/r`:
/// `c₁·4π∫[u_t u_r r² + u_t u r] dr`. Pointwise identical to `4π∫φ_tφ_r`.
pub fn morawetz_m1_u_route<T: Real>(st: &FieldState<T>, cfg: &MonitorConfig<T>) -> T {
    let g = *st.grid();
    let tr = SineTransform::new(g.n());
    let (c, ct) = tr.forward_pair(st.u.phi(), st.ut.phi());
    let dphi = reduced_derivative(&tr, &c, &g);
    let sp = StateSpectra { c, ct, dphi };
    let dphi = &sp.dphi;
    let mut s = T::zero();
    for i in 0..g.n() {
        let r = g.node(i);
        let u = st.u.phi()[i] / r;
        let ut = st.ut.phi()[i] / r;
        let ur = (dphi[i + 1] - u) / r;
        s = s + ut * ur * r * r + ut * u * r;
    }
    cfg.c1 * T::lit(4.0) * T::PI() * (s * g.dr() + origin_correction(&g, &sp))
}

pub fn modified_energy<T: Real>(
    v: &FieldState<T>,
    w: &FieldState<T>,
    cfg: &MonitorConfig<T>,
) -> Result<T> {
    v.u.check_grid(&w.u)?;
    Ok(Monitor::new(*v.grid(), *cfg)?.modified_energy(v, w))
}
