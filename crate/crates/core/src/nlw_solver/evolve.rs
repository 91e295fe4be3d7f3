use super::config::SolverConfig;
use super::stepper::{check_finite, Stepper};
use crate::error::{NlwError, Result};
use crate::linear_prop::{Trajectory, TrajectoryMeta};
use crate::monitors::{Monitor, MonitorConfig};
use crate::radial_field::{FieldState, RadialField};
use crate::scalar::Real;

/// Relative amplitude below which the data counts as zero for the
/// finite-speed domain check.
pub const SUPPORT_REL_TOL: f64 = 1e-13;

fn check_domain<T: Real>(st: &FieldState<T>, t_end: T) -> Result<()> {
    let tol = T::lit(SUPPORT_REL_TOL);
    let support = st.u.support_radius(tol).max(st.ut.support_radius(tol));
    let r_max = st.grid().r_max();
    if support > T::zero() && support + t_end > r_max {
        return Err(NlwError::Config(format!(
            "grid.r_max = {r_max} is smaller than data support {support} + t_end {t_end}; \
             the Dirichlet wall would reflect the solution"
        )));
    }
    Ok(())
}

fn output_due(step: usize, steps: usize, stride: usize) -> bool {
    step.is_multiple_of(stride) || step == steps
}

/// Integrates the equation and stores every `output_stride`-th state together
/// with its diagnostics record.
pub fn evolve<T: Real>(
    st: &FieldState<T>,
    cfg: &SolverConfig<T>,
    monitors: &MonitorConfig<T>,
) -> Result<Trajectory<T>> {
    let grid = *st.grid();
    cfg.validate(&grid)?;
    check_domain(st, cfg.t_end)?;
    let monitor = Monitor::new(grid, *monitors)?;
    let stepper = Stepper::new(grid, cfg.dt, cfg.nonlinearity);
    let steps = cfg.steps();

    let mut phi = st.u.phi().to_vec();
    let mut phit = st.ut.phi().to_vec();
    let mut states = Vec::with_capacity(steps / cfg.output_stride + 2);
    let mut records = Vec::with_capacity(steps / cfg.output_stride + 2);
    let first = st.clone();
    records.push(monitor.record(&first, None));
    states.push(first);
    for k in 1..=steps {
        stepper.advance(&mut phi, &mut phit);
        let t = st.t + T::from_count(k) * cfg.dt;
        if output_due(k, steps, cfg.output_stride) {
            check_finite("u", &phi, &phit, k as u64, t)?;
            let s = FieldState {
                t,
                u: RadialField::from_phi_unchecked(grid, phi.clone()),
                ut: RadialField::from_phi_unchecked(grid, phit.clone()),
            };
            records.push(monitor.record(&s, None));
            states.push(s);
        }
    }
    let meta = TrajectoryMeta {
        label: "direct".into(),
        dt: cfg.dt.as_f64(),
        output_stride: cfg.output_stride,
        nonlinearity: cfg.nonlinearity.as_f64(),
    };
    Ok(Trajectory::from_parts(states, records, meta))
}

/// Evolves `w_tt − Δw + w³ = 0` and `v_tt − Δv + v³ + 3v²w + 3vw² = 0`
/// side by side. Records on the `v` trajectory carry `E(v)`, the Morawetz
/// potentials of `v`, `ℰ` and the `w`-norms; records on the `w` trajectory
/// describe `w` alone.
pub fn evolve_coupled<T: Real>(
    v0: &FieldState<T>,
    w0: &FieldState<T>,
    cfg: &SolverConfig<T>,
    monitors: &MonitorConfig<T>,
) -> Result<(Trajectory<T>, Trajectory<T>)> {
    let grid = *v0.grid();
    v0.u.check_grid(&w0.u)?;
    cfg.validate(&grid)?;
    // The frequency split smears both pieces over the grid; only their sum
    // carries the compact support.
    check_domain(&v0.try_add(w0)?, cfg.t_end)?;
    let monitor = Monitor::new(grid, *monitors)?;
    let stepper = Stepper::new(grid, cfg.dt, cfg.nonlinearity);
    let steps = cfg.steps();

    let (mut v, mut vt) = (v0.u.phi().to_vec(), v0.ut.phi().to_vec());
    let (mut w, mut wt) = (w0.u.phi().to_vec(), w0.ut.phi().to_vec());
    let mut v_states = vec![v0.clone()];
    let mut w_states = vec![FieldState {
        t: v0.t,
        ..w0.clone()
    }];
    let mut v_records = vec![monitor.record(v0, Some(w0))];
    let mut w_records = vec![monitor.record(w0, None)];
    for k in 1..=steps {
        stepper.advance_coupled(&mut v, &mut vt, &mut w, &mut wt);
        if output_due(k, steps, cfg.output_stride) {
            let t = v0.t + T::from_count(k) * cfg.dt;
            check_finite("w", &w, &wt, k as u64, t)?;
            check_finite("v", &v, &vt, k as u64, t)?;
            let vs = FieldState {
                t,
                u: RadialField::from_phi_unchecked(grid, v.clone()),
                ut: RadialField::from_phi_unchecked(grid, vt.clone()),
            };
            let ws = FieldState {
                t,
                u: RadialField::from_phi_unchecked(grid, w.clone()),
                ut: RadialField::from_phi_unchecked(grid, wt.clone()),
            };
            v_records.push(monitor.record(&vs, Some(&ws)));
            w_records.push(monitor.record(&ws, None));
            v_states.push(vs);
            w_states.push(ws);
        }
    }
    let meta = |label: &str| TrajectoryMeta {
        label: label.into(),
        dt: cfg.dt.as_f64(),
        output_stride: cfg.output_stride,
        nonlinearity: cfg.nonlinearity.as_f64(),
    };
    Ok((
        Trajectory::from_parts(v_states, v_records, meta("coupled_v")),
        Trajectory::from_parts(w_states, w_records, meta("coupled_w")),
    ))
}
