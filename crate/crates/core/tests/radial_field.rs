mod common;

use approx::assert_relative_eq;
use common::*;
use nlw_core::radial_field::*;
use nlw_core::NlwError;

#[test]
fn gaussian_half_norm_matches_closed_form() {
    // The box spectrum samples ξ³e^{−ξ²/2} at spacing π/r_max, so the error
    // falls like r_max⁻⁴.
    let err = |r_max: f64, n: usize| {
        let u = RadialField::from_profile(grid(r_max, n), gaussian(1.0, 1.0));
        let h = hs_norm(&u, 0.5).unwrap();
        (h * h - GAUSS_H_HALF_SQ).abs() / GAUSS_H_HALF_SQ
    };
    let (e40, e80) = (err(40.0, 4095), err(80.0, 8191));
    assert!(e40 < 1e-6, "{e40}");
    assert!(e80 < e40 / 12.0, "{e40} {e80}");
}

#[test]
fn gradient_norm_matches_quadrature() {
    let g = grid(40.0, 4095);
    let u = RadialField::from_profile(g, gaussian(1.0, 1.0));
    let h1 = hs_norm(&u, 1.0).unwrap();
    let grad = simpson(
        |r| 4.0 * std::f64::consts::PI * r * r * 4.0 * r * r * (-2.0 * r * r).exp(),
        0.0,
        12.0,
        20_000,
    );
    assert_relative_eq!(h1 * h1, grad, max_relative = 1e-9);
}

#[test]
fn l4_and_weighted_l4_of_gaussian() {
    let g = grid(40.0, 4095);
    let u = RadialField::from_profile(g, gaussian(1.0, 1.0));
    assert_relative_eq!(l4_norm_pow4(&u), gauss_l4_pow4(), max_relative = 1e-9);
    assert_relative_eq!(weighted_l4(&u), GAUSS_WEIGHTED_L4, max_relative = 1e-8);
}

#[test]
fn transform_round_trip() {
    let g = grid(20.0, 1023);
    let u = RadialField::from_profile(g, |r: f64| (1.0 + r).recip() * (-(r - 3.0).powi(2)).exp());
    let back = from_spectral(&to_spectral(&u));
    assert!(max_abs_diff(back.phi(), u.phi()) < 1e-13);
}

#[test]
fn partition_of_unity() {
    let g = grid(40.0, 4095);
    let lp = LpConfig::for_grid(&g);
    let u = RadialField::from_profile(g, |r: f64| (-(r - 2.0).powi(2)).exp() * (5.0 * r).cos());
    let mut acc = lp_project(&u, lp.j_min - 1, ProjectionKind::Low, &lp).unwrap();
    for j in lp.j_min..=lp.j_max {
        acc = acc
            .try_add(&lp_project(&u, j, ProjectionKind::Band, &lp).unwrap())
            .unwrap();
    }
    acc = acc
        .try_add(&lp_project(&u, lp.j_max, ProjectionKind::High, &lp).unwrap())
        .unwrap();
    assert!(max_abs_diff(acc.phi(), u.phi()) < 1e-10);
}

#[test]
fn band_out_of_range_is_an_error() {
    let g = grid(40.0, 1023);
    let lp = LpConfig::for_grid(&g);
    let u = RadialField::zeros(g);
    assert!(matches!(
        lp_project(&u, lp.j_max + 1, ProjectionKind::Band, &lp),
        Err(NlwError::Range { .. })
    ));
}

#[test]
fn mismatched_grids_do_not_add() {
    let a = RadialField::<f64>::zeros(grid(10.0, 63));
    let b = RadialField::<f64>::zeros(grid(10.0, 127));
    assert!(a.try_add(&b).is_err());
}

#[test]
fn origin_value_of_smooth_profile() {
    let g = grid(10.0, 1023);
    let u = RadialField::from_profile(g, |r: f64| 2.0 + r * r);
    assert_relative_eq!(u.u_at_origin(), 2.0, max_relative = 1e-8);
}

#[test]
fn single_precision_norms_track_double() {
    let g64 = grid(40.0, 2047);
    let g32 = make_grid(40.0f32, 2047).unwrap();
    let a = hs_norm(&RadialField::from_profile(g64, gaussian(1.0, 1.0)), 0.5).unwrap();
    let b = hs_norm(
        &RadialField::from_profile(g32, |r: f32| (-r * r).exp()),
        0.5,
    )
    .unwrap();
    assert_relative_eq!(b as f64, a, max_relative = 1e-4);
}
