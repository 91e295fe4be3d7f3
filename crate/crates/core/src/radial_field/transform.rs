//! Discrete sine/cosine transforms on the radial grid.
//!
//! With `N = n + 1` the type-I sine sum `S_k(a) = Σ_j a_j sin(π j k / N)` is
//! evaluated through one complex FFT of length `2N` applied to the odd
//! extension `[0, a_1..a_n, 0, -a_n..-a_1]`. Two real sequences are packed
//! into the real and imaginary parts of a single transform:
//! `FFT(odd(a) + i·odd(b)) = -2i·S(a) + 2·S(b)`.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Real;

/// Planned sine/cosine transform for a fixed interior size `n`.
#[derive(Clone)]
pub struct SineTransform<T: Real> {
    n: usize,
    fft: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for SineTransform<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SineTransform").field("n", &self.n).finish()
    }
}

impl<T: Real> SineTransform<T> {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(2 * (n + 1));
        Self { n, fft }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn run(&self, buf: &mut [Complex<T>]) {
        let mut scratch =
            vec![Complex::new(T::zero(), T::zero()); self.fft.get_inplace_scratch_len()];
        self.fft.process_with_scratch(buf, &mut scratch);
    }

    /// Unnormalized sine sums of two sequences at once.
    pub fn sine_sums_pair(&self, a: &[T], b: &[T], out_a: &mut [T], out_b: &mut [T]) {
        let n = self.n;
        let big_n = n + 1;
        debug_assert!(a.len() == n && b.len() == n && out_a.len() == n && out_b.len() == n);
        let zero = Complex::new(T::zero(), T::zero());
        let mut buf = vec![zero; 2 * big_n];
        for j in 0..n {
            buf[j + 1] = Complex::new(a[j], b[j]);
            buf[2 * big_n - 1 - j] = Complex::new(-a[j], -b[j]);
        }
        self.run(&mut buf);
        let half = T::lit(0.5);
        for k in 0..n {
            let z = buf[k + 1];
            out_a[k] = -z.im * half;
            out_b[k] = z.re * half;
        }
    }

    pub fn sine_sums(&self, a: &[T]) -> Vec<T> {
        let zeros = vec![T::zero(); self.n];
        let mut out = vec![T::zero(); self.n];
        let mut dummy = vec![T::zero(); self.n];
        self.sine_sums_pair(a, &zeros, &mut out, &mut dummy);
        out
    }

    /// Sine coefficients `c_k = (2/N) S_k(φ)` such that `φ_j = Σ_k c_k sin(π j k/N)`.
    pub fn forward_pair(&self, a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
        let mut ca = vec![T::zero(); self.n];
        let mut cb = vec![T::zero(); self.n];
        self.sine_sums_pair(a, b, &mut ca, &mut cb);
        let scale = T::lit(2.0) / T::from_count(self.n + 1);
        ca.iter_mut()
            .chain(cb.iter_mut())
            .for_each(|c| *c = *c * scale);
        (ca, cb)
    }

    pub fn forward(&self, a: &[T]) -> Vec<T> {
        let mut c = self.sine_sums(a);
        let scale = T::lit(2.0) / T::from_count(self.n + 1);
        c.iter_mut().for_each(|x| *x = *x * scale);
        c
    }

    /// Grid values from sine coefficients.
    pub fn inverse_pair(&self, ca: &[T], cb: &[T]) -> (Vec<T>, Vec<T>) {
        let mut a = vec![T::zero(); self.n];
        let mut b = vec![T::zero(); self.n];
        self.sine_sums_pair(ca, cb, &mut a, &mut b);
        (a, b)
    }

    pub fn inverse(&self, c: &[T]) -> Vec<T> {
        self.sine_sums(c)
    }

    /// Cosine sums `C_i = Σ_k b_k cos(π i k / N)` at all `N + 1` nodes
    /// `i = 0..=N` (including both endpoints), for `b` indexed `k = 1..=n`.
    pub fn cosine_sums(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let big_n = n + 1;
        debug_assert_eq!(b.len(), n);
        let zero = Complex::new(T::zero(), T::zero());
        let mut buf = vec![zero; 2 * big_n];
        for k in 0..n {
            buf[k + 1] = Complex::new(b[k], T::zero());
            buf[2 * big_n - 1 - k] = Complex::new(b[k], T::zero());
        }
        self.run(&mut buf);
        let half = T::lit(0.5);
        (0..=big_n).map(|i| buf[i].re * half).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sine(a: &[f64]) -> Vec<f64> {
        let big_n = (a.len() + 1) as f64;
        (1..=a.len())
            .map(|k| {
                a.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        x * (std::f64::consts::PI * (j + 1) as f64 * k as f64 / big_n).sin()
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_sums_for_odd_sizes() {
        for n in [7usize, 12, 31, 100] {
            let a: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect();
            let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).cos()).collect();
            let tr = SineTransform::<f64>::new(n);
            let mut sa = vec![0.0; n];
            let mut sb = vec![0.0; n];
            tr.sine_sums_pair(&a, &b, &mut sa, &mut sb);
            for (x, y) in sa.iter().zip(naive_sine(&a)) {
                assert!((x - y).abs() < 1e-11, "{x} vs {y}");
            }
            for (x, y) in sb.iter().zip(naive_sine(&b)) {
                assert!((x - y).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn cosine_sums_match_naive() {
        let n = 15;
        let b: Vec<f64> = (0..n).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        let tr = SineTransform::<f64>::new(n);
        let c = tr.cosine_sums(&b);
        assert_eq!(c.len(), n + 2);
        for (i, ci) in c.iter().enumerate() {
            let expect: f64 = (0..n)
                .map(|k| {
                    b[k] * (std::f64::consts::PI * i as f64 * (k + 1) as f64 / (n + 1) as f64).cos()
                })
                .sum();
            assert!((ci - expect).abs() < 1e-12);
        }
    }
}
