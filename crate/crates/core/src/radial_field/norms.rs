use super::field::{FieldState, RadialField, SpectralField};
use super::transform::SineTransform;
use crate::error::{NlwError, Result};
use crate::scalar::Real;

pub const SOBOLEV_MIN: f64 = -1.0;
pub const SOBOLEV_MAX: f64 = 2.0;

/// `‖u‖²_{Ḣ^s}` from sine coefficients.
///
/// With `û(ξ) = ∫u e^{−ix·ξ}dx` and `‖u‖²_{Ḣ^s} = (2π)^{−3}∫|ξ|^{2s}|û|²dξ`,
/// the radial reduction gives `8∫_0^∞ ξ^{2s} φ̂(ξ)² dξ`; sampling
/// `φ̂(ξ_k) = c_k r_max/2` with `Δξ = π/r_max` yields `2π r_max Σ ξ_k^{2s} c_k²`.
pub fn hs_norm_sq_coeff<T: Real>(c: &SpectralField<T>, s: T) -> T {
    let g = c.grid();
    let two_s = s + s;
    let sum = c
        .coeff()
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, &ck)| {
            acc + g.frequency(k).powf(two_s) * ck * ck
        });
    T::lit(2.0) * T::PI() * g.r_max() * sum
}

fn check_order<T: Real>(s: T) -> Result<()> {
    let sf = s.as_f64();
    if !(SOBOLEV_MIN..=SOBOLEV_MAX).contains(&sf) {
        return Err(NlwError::UnsupportedOrder(sf));
    }
    Ok(())
}

pub fn hs_norm<T: Real>(f: &RadialField<T>, s: T) -> Result<T> {
    check_order(s)?;
    let tr = SineTransform::new(f.grid().n());
    let c = SpectralField::from_coefficients(*f.grid(), tr.forward(f.phi()))?;
    Ok(hs_norm_sq_coeff(&c, s).sqrt())
}

/// `(‖u‖_{Ḣ^s}, ‖u_t‖_{Ḣ^{s−1}})`; `s = 1/2` gives the critical pair
/// `Ḣ^{1/2} × Ḣ^{−1/2}`.
pub fn sobolev_norm<T: Real>(st: &FieldState<T>, s: T) -> Result<(T, T)> {
    check_order(s)?;
    let tr = SineTransform::new(st.grid().n());
    sobolev_norm_with(&tr, st, s)
}

pub fn sobolev_norm_with<T: Real>(
    tr: &SineTransform<T>,
    st: &FieldState<T>,
    s: T,
) -> Result<(T, T)> {
    check_order(s)?;
    let (cu, cut) = tr.forward_pair(st.u.phi(), st.ut.phi());
    let g = *st.grid();
    let cu = SpectralField::from_coefficients(g, cu)?;
    let cut = SpectralField::from_coefficients(g, cut)?;
    Ok((
        hs_norm_sq_coeff(&cu, s).sqrt(),
        hs_norm_sq_coeff(&cut, s - T::one()).sqrt(),
    ))
}

/// Critical norm `‖u‖_{Ḣ^{1/2}} + ‖u_t‖_{Ḣ^{−1/2}}`.
pub fn critical_norm<T: Real>(st: &FieldState<T>) -> T {
    let (a, b) = sobolev_norm(st, T::lit(0.5)).expect("s = 1/2 is resolved");
    a + b
}

/// `∫ u⁴/|x| dx = 4π∫ u⁴ r dr = 4π∫ φ⁴/r³ dr`.
///
/// Trapezoid rule plus the Euler–Maclaurin origin term `(dr²/12)·u(0)⁴`: the
/// integrand `r u⁴` has nonzero slope at `r = 0`.
pub fn weighted_l4<T: Real>(f: &RadialField<T>) -> T {
    let g = f.grid();
    let s = f.phi().iter().enumerate().fold(T::zero(), |acc, (i, &p)| {
        let r = g.node(i);
        acc + p * p * p * p / (r * r * r)
    });
    let u0 = f.u_at_origin();
    let dr = g.dr();
    T::lit(4.0) * T::PI() * (s * dr + dr * dr / T::lit(12.0) * u0 * u0 * u0 * u0)
}

/// `∫ u⁴ dx = 4π ∫ φ⁴/r² dr`.
pub fn l4_norm_pow4<T: Real>(f: &RadialField<T>) -> T {
    let g = f.grid();
    let s = f.phi().iter().enumerate().fold(T::zero(), |acc, (i, &p)| {
        let r = g.node(i);
        acc + p * p * p * p / (r * r)
    });
    T::lit(4.0) * T::PI() * s * g.dr()
}

/// `‖u‖_{L^p(R³)}^p = 4π ∫ |u|^p r² dr`.
pub fn lp_norm_pow<T: Real>(f: &RadialField<T>, p: T) -> T {
    let g = f.grid();
    let s = f.phi().iter().enumerate().fold(T::zero(), |acc, (i, &ph)| {
        let r = g.node(i);
        acc + (ph / r).abs().powf(p) * r * r
    });
    T::lit(4.0) * T::PI() * s * g.dr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial_field::make_grid;

    #[test]
    fn zero_field_norms() {
        let g = make_grid(10.0, 127).unwrap();
        let st = FieldState::<f64>::zeros(g);
        assert_eq!(sobolev_norm(&st, 0.5).unwrap(), (0.0, 0.0));
        assert_eq!(weighted_l4(&st.u), 0.0);
    }

    #[test]
    fn unsupported_orders() {
        let g = make_grid(10.0, 127).unwrap();
        let st = FieldState::<f64>::zeros(g);
        assert_eq!(sobolev_norm(&st, 2.5), Err(NlwError::UnsupportedOrder(2.5)));
        assert!(sobolev_norm(&st, -1.5).is_err());
        assert!(sobolev_norm(&st, -1.0).is_ok());
    }

    #[test]
    fn l2_matches_s_zero() {
        let g = make_grid(20.0, 1023).unwrap();
        let f = RadialField::from_profile(g, |r: f64| (-r * r).exp());
        let a = hs_norm(&f, 0.0).unwrap();
        assert!((a - f.l2_norm()).abs() < 1e-12 * a);
    }

    #[test]
    fn quartic_homogeneity() {
        let g = make_grid(10.0, 511).unwrap();
        let f = RadialField::from_profile(g, |r: f64| (-r * r).exp() * (1.0 + 0.3 * r));
        let a = weighted_l4(&f);
        let b = weighted_l4(&f.scaled(2.0));
        assert!((b - 16.0 * a).abs() < 1e-12 * b);
    }
}
