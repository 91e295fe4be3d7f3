use crate::error::{NlwError, Result};
use crate::linear_prop::{FreePropagator, Trajectory};
use crate::quadrature::{integrate_clipped, trapezoid};
use crate::radial_field::{hs_norm_sq_coeff, FieldState, RadialField, SpectralField};
use crate::scalar::Real;

/// Sine coefficients of the profile `S(−(t − t_start))(u(t), u_t(t))` of a
/// stored state.
pub(crate) fn profile_coefficients<T: Real>(
    prop: &FreePropagator<T>,
    st: &FieldState<T>,
    t_start: T,
) -> (Vec<T>, Vec<T>) {
    let (mut c, mut ct) = prop.transform().forward_pair(st.u.phi(), st.ut.phi());
    prop.rotate(&mut c, &mut ct, t_start - st.t);
    (c, ct)
}

/// `‖a‖_{Ḣ^{1/2}} + ‖b‖_{Ḣ^{−1/2}}` of coefficient arrays.
pub(crate) fn critical_norm_coeff<T: Real>(prop: &FreePropagator<T>, c: Vec<T>, ct: Vec<T>) -> T {
    let g = *prop.grid();
    let half = T::lit(0.5);
    let a = SpectralField::from_coefficients(g, c).expect("sized");
    let b = SpectralField::from_coefficients(g, ct).expect("sized");
    hs_norm_sq_coeff(&a, half).sqrt() + hs_norm_sq_coeff(&b, -half).sqrt()
}

fn first_grid<T: Real>(traj: &Trajectory<T>) -> Result<(FreePropagator<T>, T)> {
    match (traj.grid(), traj.t_start()) {
        (Some(g), Some(t0)) => Ok((FreePropagator::new(*g), t0)),
        _ => Err(NlwError::InsufficientData("empty trajectory".into())),
    }
}

/// Candidate scattering data: the state stored nearest to `t`, evolved freely
/// back to the start of the trajectory.
pub fn scatter_profile<T: Real>(traj: &Trajectory<T>, t: T) -> Result<FieldState<T>> {
    let (prop, t0) = first_grid(traj)?;
    let st = traj.state_near(t)?;
    let (c, ct) = profile_coefficients(&prop, st, t0);
    let (phi, phit) = prop.transform().inverse_pair(&c, &ct);
    let g = *prop.grid();
    Ok(FieldState {
        t: t0,
        u: RadialField::from_phi_unchecked(g, phi),
        ut: RadialField::from_phi_unchecked(g, phit),
    })
}

/// `‖profile(t₂) − profile(t₁)‖_{Ḣ^{1/2}×Ḣ^{−1/2}}`.
pub fn cauchy_defect<T: Real>(traj: &Trajectory<T>, t1: T, t2: T) -> Result<T> {
    let (prop, t0) = first_grid(traj)?;
    let a = traj.state_near(t1)?;
    let b = traj.state_near(t2)?;
    Ok(defect_between(&prop, a, b, t0))
}

pub(crate) fn defect_between<T: Real>(
    prop: &FreePropagator<T>,
    a: &FieldState<T>,
    b: &FieldState<T>,
    t0: T,
) -> T {
    let (ca, cta) = profile_coefficients(prop, a, t0);
    let (cb, ctb) = profile_coefficients(prop, b, t0);
    let dc = cb.iter().zip(&ca).map(|(&x, &y)| x - y).collect();
    let dct = ctb.iter().zip(&cta).map(|(&x, &y)| x - y).collect();
    critical_norm_coeff(prop, dc, dct)
}

/// `4π φ⁴/r²` at nodes `0..=N` (the `u⁴ dx` density in `dr` measure).
pub(crate) fn l4_density<T: Real>(f: &RadialField<T>, out: &mut Vec<T>) {
    let g = f.grid();
    let four_pi = T::lit(4.0) * T::PI();
    out.clear();
    out.push(T::zero());
    for (i, &p) in f.phi().iter().enumerate() {
        let r = g.node(i);
        out.push(four_pi * p * p * p * p / (r * r));
    }
    out.push(T::zero());
}

/// `‖u‖_{L⁴_{t,x}}` over `{r ≥ r_cone + (t − t_start)}`. Cells cut by the cone
/// contribute their linearly interpolated part.
pub fn exterior_cone_norm<T: Real>(traj: &Trajectory<T>, r_cone: T) -> Result<T> {
    if !(r_cone >= T::zero()) {
        return Err(NlwError::OutOfRange {
            value: r_cone.as_f64(),
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    let Some(t0) = traj.t_start() else {
        return Ok(T::zero());
    };
    let mut dens = Vec::new();
    let times = traj.times();
    let vals: Vec<T> = traj
        .states()
        .iter()
        .map(|st| {
            l4_density(&st.u, &mut dens);
            let g = st.grid();
            integrate_clipped(&dens, g.dr(), r_cone + (st.t - t0), g.r_max())
        })
        .collect();
    Ok(trapezoid(&times, &vals).powf(T::lit(0.25)))
}
