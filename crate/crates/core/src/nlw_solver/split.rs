use serde::Serialize;

use super::config::SplitConfig;
use crate::error::{NlwError, Result};
use crate::monitors::energy;
use crate::radial_field::{
    hs_norm_sq_coeff, BumpProfile, FieldState, LpConfig, RadialField, SineTransform, SpectralField,
};
use crate::scalar::Real;

#[derive(Debug, Clone, Serialize)]
pub struct SplitReport {
    pub j_cut: i32,
    /// Cut frequency `K`; `v₀ = χ(|∇|/K)u₀`.
    pub cut_frequency: f64,
    /// `K / 2^{j_cut}`: the data are effectively rescaled by this factor so
    /// the cut sits at the dyadic frequency `2^{j_cut}`.
    pub scale: f64,
    /// `‖w₀‖_{Ḣ^{1/2}} + ‖w₁‖_{Ḣ^{−1/2}}`.
    pub high_norm: f64,
    /// `E(v₀, v₁)`.
    pub v_energy: f64,
    pub target: Option<f64>,
    pub bump: &'static str,
}

struct Splitter<'a, T: Real> {
    grid_c: &'a [T],
    grid_ct: &'a [T],
    st: &'a FieldState<T>,
    bump: BumpProfile,
}

impl<T: Real> Splitter<'_, T> {
    fn low(&self, xi: T, cut: T) -> T {
        self.bump.eval(xi / cut)
    }

    /// High-frequency critical norm for cut frequency `K`.
    fn high_norm(&self, cut: T) -> T {
        let g = *self.st.grid();
        let hi = |c: &[T]| -> Vec<T> {
            c.iter()
                .enumerate()
                .map(|(k, &ck)| ck * (T::one() - self.low(g.frequency(k), cut)))
                .collect()
        };
        let a = SpectralField::from_coefficients(g, hi(self.grid_c)).expect("sized");
        let b = SpectralField::from_coefficients(g, hi(self.grid_ct)).expect("sized");
        let half = T::lit(0.5);
        hs_norm_sq_coeff(&a, half).sqrt() + hs_norm_sq_coeff(&b, -half).sqrt()
    }
}

/// Splits `(u₀, u₁)` into a low-frequency finite-energy piece and a
/// high-frequency piece with small critical norm. `v₀ + w₀` reproduces the
/// input up to one rounding per sample (`w₀` is formed as `u₀ − v₀`).
pub fn split_initial_data<T: Real>(
    st: &FieldState<T>,
    sc: &SplitConfig<T>,
) -> Result<(FieldState<T>, FieldState<T>, SplitReport)> {
    sc.validate()?;
    let g = *st.grid();
    let tr = SineTransform::new(g.n());
    let (c, ct) = tr.forward_pair(st.u.phi(), st.ut.phi());
    let lp = LpConfig::for_grid(&g);
    let sp = Splitter {
        grid_c: &c,
        grid_ct: &ct,
        st,
        bump: lp.bump,
    };
    let dyadic = |j: i32| T::lit(2f64.powi(j));

    let mut j = sc.j_cut;
    let mut cut = dyadic(j);
    if let Some(eps) = sc.epsilon_target {
        let mut best = sp.high_norm(cut);
        while best > eps {
            if j >= lp.j_max {
                return Err(NlwError::TargetUnreachable {
                    target: eps.as_f64(),
                    best: best.as_f64(),
                });
            }
            j += 1;
            cut = dyadic(j);
            best = sp.high_norm(cut);
        }
        if sc.refine_scale {
            // High norm is nonincreasing in K; find the smallest K in the
            // final octave that meets the target.
            let (mut lo, mut hi) = (dyadic(j - 1), cut);
            if sp.high_norm(lo) <= eps {
                hi = lo;
            } else {
                for _ in 0..80 {
                    let mid = (lo + hi) * T::lit(0.5);
                    if sp.high_norm(mid) <= eps {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
            }
            cut = hi;
        }
    }

    let low = |coeff: &[T]| -> Vec<T> {
        coeff
            .iter()
            .enumerate()
            .map(|(k, &ck)| ck * sp.low(g.frequency(k), cut))
            .collect()
    };
    let (v, vt) = tr.inverse_pair(&low(&c), &low(&ct));
    let v_state = FieldState {
        t: st.t,
        u: RadialField::from_phi_unchecked(g, v),
        ut: RadialField::from_phi_unchecked(g, vt),
    };
    let w_state = st.try_sub(&v_state)?;
    let report = SplitReport {
        j_cut: j,
        cut_frequency: cut.as_f64(),
        scale: (cut / dyadic(j)).as_f64(),
        high_norm: sp.high_norm(cut).as_f64(),
        v_energy: energy(&v_state).as_f64(),
        target: sc.epsilon_target.map(|e| e.as_f64()),
        bump: lp.bump.name(),
    };
    Ok((v_state, w_state, report))
}
