//! Closed-form radial kernels for the translate-averaged Morawetz potential.
//!
//! For a ball `B = {|y| ≤ ρ}` and `|x| = r`:
//! `N(r) = ∫_B |x−y|^{-1} dy` (Newtonian potential of the ball) and
//! `G(r) = ∂_r ∫_B |x−y| dy`, so that `∫_B (x−y)/|x−y| dy = G(r)·x/|x|`.

use crate::scalar::Real;

pub fn ball_newton_potential<T: Real>(r: T, rho: T) -> T {
    let pi = T::PI();
    if r >= rho {
        T::lit(4.0) * pi / T::lit(3.0) * rho * rho * rho / r
    } else {
        T::lit(2.0) * pi * rho * rho - T::lit(2.0) * pi / T::lit(3.0) * r * r
    }
}

pub fn ball_distance_gradient<T: Real>(r: T, rho: T) -> T {
    let four_pi = T::lit(4.0) * T::PI();
    if r >= rho {
        four_pi / T::lit(3.0) * rho.powi(3) - four_pi / T::lit(15.0) * rho.powi(5) / (r * r)
    } else {
        four_pi * (rho * rho * r / T::lit(3.0) - r.powi(3) / T::lit(15.0))
    }
}
