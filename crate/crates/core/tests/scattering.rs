mod common;

use std::f64::consts::PI;

use common::*;
use nlw_core::monitors::MonitorConfig;
use nlw_core::nlw_solver::*;
use nlw_core::radial_field::*;
use nlw_core::scattering::*;
use nlw_core::NlwError;

fn run(amp: f64, mu: f64, t_end: f64) -> nlw_core::Traj {
    let g = grid(32.0, 2047);
    let cfg = SolverConfig {
        dt: 4e-3,
        t_end,
        output_stride: 5,
        nonlinearity: mu,
        ..Default::default()
    };
    evolve(&gaussian_state(g, amp), &cfg, &MonitorConfig::default()).unwrap()
}

#[test]
fn free_solutions_have_constant_profiles() {
    let t = run(1.0, 0.0, 16.0);
    let first = &t.states()[0];
    let p = scatter_profile(&t, 12.0).unwrap();
    assert_eq!(p.t, 0.0);
    assert!(max_abs_diff(p.u.phi(), first.u.phi()) < 1e-12);
    let rep = l4_accumulation(&t).unwrap();
    assert!(
        rep.cauchy_defects.iter().all(|d| d.defect < 1e-11),
        "{:?}",
        rep.cauchy_defects
    );
    assert!(rep.scattering_detected);
}

#[test]
fn spacetime_l4_of_a_free_wave() {
    let t = run(1.0, 0.0, 6.0);
    let rep = l4_accumulation(&t).unwrap();
    let slice = |s: f64| {
        simpson(
            |r| 4.0 * PI * r * r * free_wave(gaussian(1.0, 1.0), s, r.max(1e-9)).powi(4),
            0.0,
            16.0,
            4000,
        )
    };
    let want = simpson(slice, 0.0, 6.0, 600).powf(0.25);
    assert!(
        (rep.l4_total - want).abs() < 1e-5 * want,
        "{} {want}",
        rep.l4_total
    );
}

#[test]
fn small_data_profiles_settle() {
    let g = grid(32.0, 2047);
    let amp = 0.05 / critical_norm(&gaussian_state(g, 1.0));
    let t = run(amp, 1.0, 16.0);
    let rep = l4_accumulation(&t).unwrap();
    assert!((rep.data_norm - 0.05).abs() < 1e-9);
    let d: Vec<f64> = rep.cauchy_defects.iter().map(|d| d.defect).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    assert!(rep.scattering_detected);
    assert!(rep.l4_tail.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(rep.l4_tail[0], rep.l4_total);
    assert_eq!(*rep.l4_tail.last().unwrap(), 0.0);
    let direct = cauchy_defect(&t, 4.0, 8.0).unwrap();
    let listed = rep
        .cauchy_defects
        .iter()
        .find(|d| d.t1 == 4.0)
        .unwrap()
        .defect;
    assert_eq!(direct, listed);
}

#[test]
fn large_data_tail_is_still_monotone() {
    let rep = l4_accumulation(&run(3.0, 1.0, 8.0)).unwrap();
    assert!(rep.l4_tail.windows(2).all(|w| w[1] <= w[0]));
    assert!(rep.l4_tail.iter().all(|x| x.is_finite()));
}

#[test]
fn exterior_cone_shrinks_with_radius() {
    let t = run(1.0, 1.0, 8.0);
    let near = exterior_cone_norm(&t, 0.5).unwrap();
    let far = exterior_cone_norm(&t, 3.0).unwrap();
    assert!(far < near);
    assert!(matches!(
        exterior_cone_norm(&t, -1.0),
        Err(NlwError::OutOfRange { .. })
    ));
}
