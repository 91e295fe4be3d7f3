//! Initial data families.

use nlw_core::radial_field::{critical_norm, FieldState, RadialField, RadialGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{DataFamily, DataSection};

fn gaussian(amp: f64, width: f64) -> impl Fn(f64) -> f64 {
    move |r| amp * (-(r / width) * (r / width)).exp()
}

fn bump(amp: f64, center: f64, width: f64) -> impl Fn(f64) -> f64 {
    move |r| {
        let x = (r - center) / width;
        if x.abs() < 1.0 {
            amp * (1.0 - 1.0 / (1.0 - x * x)).exp()
        } else {
            0.0
        }
    }
}

/// `sin(ξr)/(ξr)`, the spherical average of a plane wave of frequency `ξ`.
fn sinc(xi: f64, r: f64) -> f64 {
    let x = xi * r;
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

pub fn initial_data(grid: RadialGrid<f64>, d: &DataSection, seed: u64) -> FieldState<f64> {
    let zero = RadialField::zeros(grid);
    let (u, ut) = match d.family {
        DataFamily::Gaussian => (
            RadialField::from_profile(grid, gaussian(d.amplitude, d.width)),
            RadialField::from_profile(grid, gaussian(d.velocity, d.width)),
        ),
        DataFamily::Bump => (
            RadialField::from_profile(grid, bump(d.amplitude, d.center, d.width)),
            zero,
        ),
        DataFamily::Rescaled => {
            let l = d.lambda;
            let (g0, g1) = (
                gaussian(d.amplitude, d.width),
                gaussian(d.velocity, d.width),
            );
            (
                RadialField::from_profile(grid, |r| l * g0(l * r)),
                RadialField::from_profile(grid, |r| l * l * g1(l * r)),
            )
        }
        DataFamily::BandLimited => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (lo, hi) = (d.frequency / 2f64.sqrt(), d.frequency * 2f64.sqrt());
            let modes: Vec<(f64, f64)> = (0..d.modes)
                .map(|_| (rng.random_range(lo..hi), rng.random_range(-1.0..1.0)))
                .collect();
            let env = gaussian(1.0, d.width);
            let raw = RadialField::from_profile(grid, |r| {
                env(r) * modes.iter().map(|&(xi, a)| a * sinc(xi, r)).sum::<f64>()
            });
            let norm =
                critical_norm(&FieldState::new(0.0, raw.clone(), zero.clone()).expect("same grid"));
            let u = if norm > 0.0 {
                raw.scaled(d.amplitude / norm)
            } else {
                raw
            };
            (u, zero)
        }
    };
    FieldState::new(0.0, u, ut).expect("same grid")
}
