mod common;

use std::f64::consts::PI;

use common::*;
use nlw_core::monitors::*;
use nlw_core::nlw_solver::*;
use nlw_core::radial_field::*;
use nlw_core::NlwError;

fn moving_state(g: RadialGrid<f64>) -> FieldState<f64> {
    FieldState::new(
        0.0,
        RadialField::from_profile(g, |r: f64| (-2.0 * r * r).exp()),
        RadialField::from_profile(g, |r: f64| (1.0 + r * r) * (-r * r).exp()),
    )
    .unwrap()
}

#[test]
fn m1_matches_quadrature() {
    let g = grid(30.0, 4095);
    let cfg = MonitorConfig::default();
    let st = moving_state(g);
    let want = cfg.c1
        * simpson(
            |r| {
                let u = (-2.0 * r * r).exp();
                let ur = -4.0 * r * u;
                let ut = (1.0 + r * r) * (-r * r).exp();
                4.0 * PI * r * r * ut * (ur + if r > 0.0 { u / r } else { 0.0 })
            },
            0.0,
            12.0,
            40_000,
        );
    let got = morawetz_potential(&st, MorawetzKind::M1, &cfg).unwrap();
    assert!((got - want).abs() < 1e-9 * want.abs(), "{got} {want}");
    assert!((morawetz_m1_u_route(&st, &cfg) - got).abs() < 1e-12);
}

#[test]
fn m2_and_m3_are_bounded_by_energy() {
    let g = grid(30.0, 2047);
    let cfg = MonitorConfig::default();
    let st = moving_state(g);
    let e = energy(&st);
    for kind in [MorawetzKind::M2, MorawetzKind::M3] {
        let m = morawetz_potential(&st, kind, &cfg).unwrap();
        assert!(m.is_finite() && m.abs() < e, "{kind:?}: {m} vs {e}");
    }
}

#[test]
fn modified_energy_without_partner_adds_potentials() {
    let g = grid(30.0, 2047);
    let cfg = MonitorConfig::default();
    let st = moving_state(g);
    let zero = FieldState::zeros(g);
    let sum: f64 = [MorawetzKind::M1, MorawetzKind::M2, MorawetzKind::M3]
        .iter()
        .map(|&k| morawetz_potential(&st, k, &cfg).unwrap())
        .sum();
    let me = modified_energy(&st, &zero, &cfg).unwrap();
    assert!((me - energy(&st) - sum).abs() < 1e-12);
    let ratio = me / energy(&st);
    assert!((0.5..=2.0).contains(&ratio));
}

#[test]
fn virial_constant_is_two_pi() {
    let g = grid(20.0, 1023);
    let mc = MonitorConfig::default();
    for mu in [0.0, 1.0] {
        let cfg = SolverConfig {
            dt: 4e-3,
            t_end: 6.0,
            output_stride: 5,
            nonlinearity: mu,
            ..Default::default()
        };
        let t = evolve(&gaussian_state(g, 1.0), &cfg, &mc).unwrap();
        let rep = virial_residual(&t, (0.0, 6.0), &mc).unwrap();
        let k = rep.kappa.unwrap();
        assert!((k - 2.0 * PI).abs() < 1e-3, "mu = {mu}: {k}");
        assert!(
            rep.within_tolerance,
            "{} > {}",
            rep.max_residual, rep.tolerance
        );
        assert!(rep.sign_preserved);
    }
}

#[test]
fn virial_window_too_short() {
    let g = grid(20.0, 255);
    let mc = MonitorConfig::default();
    let cfg = SolverConfig {
        dt: 1e-2,
        t_end: 0.3,
        output_stride: 10,
        ..Default::default()
    };
    let t = evolve(&gaussian_state(g, 1.0), &cfg, &mc).unwrap();
    assert!(matches!(
        virial_residual(&t, (0.0, 0.3), &mc),
        Err(NlwError::InsufficientData(_))
    ));
}

#[test]
fn bound_ratios_are_finite() {
    let g = grid(20.0, 1023);
    let mc = MonitorConfig::default();
    let cfg = SolverConfig {
        dt: 4e-3,
        t_end: 4.0,
        output_stride: 5,
        ..Default::default()
    };
    let t = evolve(&gaussian_state(g, 1.0), &cfg, &mc).unwrap();
    let b = bound_ratios(&t, &mc).unwrap();
    assert!(!b.undefined);
    for r in [
        b.ratio_weighted_l4,
        b.ratio_local_mass,
        b.ratio_local_energy,
    ] {
        let r = r.unwrap();
        assert!(r.is_finite() && r > 0.0);
    }
    assert!(b.r_grid.contains(&b.argmax_local_mass));
}

#[test]
fn bound_ratios_undefined_for_zero_data() {
    let g = grid(20.0, 255);
    let mc = MonitorConfig::default();
    let cfg = SolverConfig {
        dt: 1e-2,
        t_end: 1.0,
        output_stride: 10,
        ..Default::default()
    };
    let t = evolve(&FieldState::zeros(g), &cfg, &mc).unwrap();
    let b = bound_ratios(&t, &mc).unwrap();
    assert!(b.undefined && b.ratio_local_energy.is_none());
}

#[test]
fn growth_fit_recovers_power_law() {
    let t: Vec<f64> = (0..50).map(|i| i as f64 * 0.5).collect();
    let e: Vec<f64> = t.iter().map(|t| 3.0 * (1.0 + t).powf(0.3)).collect();
    let fit = growth_fit_series(&t, &e).unwrap();
    assert!((fit.exponent - 0.3).abs() < 1e-12);
    assert!((fit.r2 - 1.0).abs() < 1e-12);
    assert!(growth_fit_series(&t[..10], &e[..10]).is_err());
    let short: Vec<f64> = (0..30).map(|i| i as f64 * 0.1).collect();
    assert!(growth_fit_series(&short, &vec![1.0; 30]).is_err());
}

#[test]
fn config_rejects_bad_values() {
    let c = MonitorConfig::<f64> {
        delta: 1.0,
        ..Default::default()
    };
    assert!(c.validate().is_err());
    let c = MonitorConfig::<f64> {
        radius: 0.0,
        ..Default::default()
    };
    assert!(c.validate().is_err());
}
