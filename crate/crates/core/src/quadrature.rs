//! Shared one-dimensional quadrature rules.

use crate::scalar::Real;

/// Trapezoid rule on nonuniform abscissae.
pub(crate) fn trapezoid<T: Real>(x: &[T], y: &[T]) -> T {
    x.windows(2).zip(y.windows(2)).fold(T::zero(), |a, (x, y)| {
        a + (x[1] - x[0]) * (y[0] + y[1]) * T::lit(0.5)
    })
}

/// Integral of the cubic Hermite interpolant through `(x_i, y_i, y'_i)`:
/// `Σ h/2·(y_i + y_{i+1}) + h²/12·(y'_i − y'_{i+1})`, fourth order.
pub(crate) fn hermite_rule<T: Real>(x: &[T], y: &[T], dy: &[T]) -> T {
    let twelve = T::lit(12.0);
    (0..x.len().saturating_sub(1)).fold(T::zero(), |a, i| {
        let h = x[i + 1] - x[i];
        a + h * (y[i] + y[i + 1]) * T::lit(0.5) + h * h / twelve * (dy[i] - dy[i + 1])
    })
}

/// Integral over `[x₀ + θ_a h, x₀ + θ_b h]` of the cubic Hermite interpolant on
/// one interval of length `h` with end values `y0, y1` and slopes `d0, d1`.
pub(crate) fn hermite_partial<T: Real>(
    y0: T,
    d0: T,
    y1: T,
    d1: T,
    h: T,
    theta_a: T,
    theta_b: T,
) -> T {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let prim = |q: T| {
        let (q2, q3, q4) = (q * q, q * q * q, q * q * q * q);
        let h00 = q4 / two - q3 + q;
        let h10 = q4 / four - two * q3 / three + q2 / two;
        let h01 = -q4 / two + q3;
        let h11 = q4 / four - q3 / three;
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    };
    h * (prim(theta_b) - prim(theta_a))
}

/// Trapezoid integral of nodal values `f_j` (`j = 0..=N`, spacing `h`) over
/// `[a, b]`, treating `f` as piecewise linear so cut cells are clipped exactly.
pub(crate) fn integrate_clipped<T: Real>(f: &[T], h: T, a: T, b: T) -> T {
    let last = T::from_count(f.len() - 1) * h;
    let a = a.max(T::zero());
    let b = b.min(last);
    if b <= a {
        return T::zero();
    }
    let at = |x: T| {
        let q = x / h;
        let j = q.floor().to_usize().unwrap_or(0).min(f.len() - 2);
        let w = q - T::from_count(j);
        (j, f[j] + (f[j + 1] - f[j]) * w)
    };
    let (ja, fa) = at(a);
    let (jb, fb) = at(b);
    let half = T::lit(0.5);
    if ja == jb {
        return (b - a) * (fa + fb) * half;
    }
    let mut s = (T::from_count(ja + 1) * h - a) * (fa + f[ja + 1]) * half;
    for j in ja + 1..jb {
        s = s + h * (f[j] + f[j + 1]) * half;
    }
    s + (b - T::from_count(jb) * h) * (f[jb] + fb) * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipped_integral_of_linear_data_is_exact() {
        let h = 0.1f64;
        let f: Vec<f64> = (0..=20).map(|j| 2.0 * j as f64 * h + 1.0).collect();
        let exact = |a: f64, b: f64| (b * b + b) - (a * a + a);
        for &(a, b) in &[(0.03, 1.77), (0.0, 2.0), (0.51, 0.57), (1.2, 1.3)] {
            assert!((integrate_clipped(&f, h, a, b) - exact(a, b)).abs() < 1e-12);
        }
        assert_eq!(integrate_clipped(&f, h, 1.0, 0.5), 0.0);
    }

    #[test]
    fn hermite_rules_are_exact_for_cubics() {
        let p = |x: f64| 2.0 * x * x * x - x * x + 3.0 * x - 1.0;
        let dp = |x: f64| 6.0 * x * x - 2.0 * x + 3.0;
        let big = |x: f64| 0.5 * x.powi(4) - x.powi(3) / 3.0 + 1.5 * x * x - x;
        let x: Vec<f64> = vec![0.0, 0.3, 0.5, 1.1, 2.0];
        let y: Vec<f64> = x.iter().map(|&v| p(v)).collect();
        let d: Vec<f64> = x.iter().map(|&v| dp(v)).collect();
        assert!((hermite_rule(&x, &y, &d) - (big(2.0) - big(0.0))).abs() < 1e-12);
        let (x0, h) = (0.5, 0.6);
        let part = hermite_partial(p(x0), dp(x0), p(x0 + h), dp(x0 + h), h, 0.25, 0.8);
        let exact = big(x0 + 0.8 * h) - big(x0 + 0.25 * h);
        assert!((part - exact).abs() < 1e-12);
    }
}
