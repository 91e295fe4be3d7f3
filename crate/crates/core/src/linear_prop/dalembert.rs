use crate::scalar::Real;

/// Free radial wave with data `(u₀, 0)`:
/// `r·u(t,r) = ½[(r+t)u₀(r+t) + (r−t)u₀(|r−t|)]`.
///
/// At `r = 0` the value is the limit `u₀(t) + t·u₀'(t)`, obtained from the
/// formula at `r = h, 2h` by even Richardson extrapolation.
pub fn dalembert_oracle<T: Real>(u0: impl Fn(T) -> T, t: T, r: T) -> T {
    let phi0 = |x: T| x * u0(x.abs());
    let eval = |r: T| (phi0(r + t) + phi0(r - t)) * T::lit(0.5) / r;
    if r > T::lit(1e-6) || t == T::zero() {
        if r == T::zero() {
            return u0(T::zero());
        }
        return eval(r);
    }
    let h = T::lit(1e-3) * (T::one() + t.abs()).min(T::lit(10.0));
    (T::lit(4.0) * eval(h) - eval(h + h)) / T::lit(3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(r: f64) -> f64 {
        (-r * r).exp()
    }

    #[test]
    fn identity_at_time_zero() {
        for r in [0.0, 0.3, 1.0, 4.0] {
            assert!((dalembert_oracle(gauss, 0.0, r) - gauss(r)).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_point() {
        let expect = (3.0 * (-9.0f64).exp() - (-1.0f64).exp()) / 2.0;
        assert!((dalembert_oracle(gauss, 2.0, 1.0) - expect).abs() < 1e-15);
    }

    #[test]
    fn origin_limit_matches_series() {
        for t in [0.3, 1.0, 2.5] {
            let exact = gauss(t) + t * (-2.0 * t * gauss(t));
            assert!(
                (dalembert_oracle(gauss, t, 0.0) - exact).abs() < 1e-10,
                "t={t}"
            );
            assert!((dalembert_oracle(gauss, t, 1e-4) - exact).abs() < 1e-7);
        }
    }
}
