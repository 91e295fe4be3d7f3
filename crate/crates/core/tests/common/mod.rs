#![allow(dead_code)]

use std::f64::consts::PI;

use nlw_core::radial_field::{make_grid, FieldState, RadialField, RadialGrid};

pub fn gaussian(amp: f64, width: f64) -> impl Fn(f64) -> f64 {
    move |r: f64| amp * (-(r / width) * (r / width)).exp()
}

pub fn gaussian_state(grid: RadialGrid<f64>, amp: f64) -> FieldState<f64> {
    FieldState::new(
        0.0,
        RadialField::from_profile(grid, gaussian(amp, 1.0)),
        RadialField::zeros(grid),
    )
    .unwrap()
}

pub fn grid(r_max: f64, n: usize) -> RadialGrid<f64> {
    make_grid(r_max, n).unwrap()
}

/// Composite Simpson on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// `‖e^{−r²}‖²_{Ḣ^{1/2}}`: the 3D transform is `π^{3/2}e^{−ξ²/4}`, so the
/// norm is `(2π)^{−3}·4π∫ξ³π³e^{−ξ²/2}dξ = π`.
pub const GAUSS_H_HALF_SQ: f64 = PI;

/// `∫ e^{−4r²}/|x| dx = 4π∫ r e^{−4r²} dr = π/2`.
pub const GAUSS_WEIGHTED_L4: f64 = PI / 2.0;

/// `½∫|∇u|² + ¼∫u⁴` for `u = e^{−r²}`, by brute-force quadrature.
pub fn gauss_energy_quadrature() -> f64 {
    let grad = simpson(
        |r| 4.0 * PI * r * r * (4.0 * r * r * (-2.0 * r * r).exp()),
        0.0,
        12.0,
        20_000,
    );
    let quart = simpson(
        |r| 4.0 * PI * r * r * (-4.0 * r * r).exp(),
        0.0,
        12.0,
        20_000,
    );
    0.5 * grad + 0.25 * quart
}

/// `∫ e^{−4r²} dx`, closed form `π^{3/2}/8`.
pub fn gauss_l4_pow4() -> f64 {
    PI.powf(1.5) / 8.0
}

/// Free wave with data `(u₀, 0)`, from `r·u = ½[(r+t)u₀(r+t) + (r−t)u₀(|r−t|)]`.
pub fn free_wave(u0: impl Fn(f64) -> f64, t: f64, r: f64) -> f64 {
    let phi = |x: f64| x * u0(x.abs());
    0.5 * (phi(r + t) + phi(r - t)) / r
}

pub fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
