//! Integral-preserving harmonic interpolation of twelve monthly totals.
//!
//! The interpolant is a 12-periodic Fourier series with six harmonics on the
//! month-coordinate axis,
//!
//! ```text
//! y(τ) = a0 + Σ_{j=1..6} [ a_j cos(2πjτ/12) + b_j sin(2πjτ/12) ]
//! ```
//!
//! whose integral over every month interval `[T - 1/2, T + 1/2]` equals the
//! given total `M_T`. Integrating a harmonic over a unit interval centred at
//! `T` multiplies it by `sin(πj/12) / (πj/12)`; the fit divides the discrete
//! Fourier coefficients of `M` by that factor.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};

pub const MONTHS: usize = 12;
pub const HARMONICS: usize = 6;

/// The twelve monthly totals `M_1..M_12` (energy per month).
#[derive(Debug, Clone, PartialEq)]
pub struct MonthlyIntegrals<T> {
    values: [T; MONTHS],
}

impl<T: Scalar> MonthlyIntegrals<T> {
    pub fn new(values: [T; MONTHS]) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("monthly integral for month {}", i + 1)));
        }
        Ok(Self { values })
    }

    pub fn from_slice(values: &[T]) -> Result<Self> {
        let arr: [T; MONTHS] = values
            .try_into()
            .map_err(|_| Error::MonthCount(values.len()))?;
        Self::new(arr)
    }

    pub fn values(&self) -> &[T; MONTHS] {
        &self.values
    }

    /// Total for month `month` (1-based).
    pub fn get(&self, month: usize) -> T {
        self.values[month - 1]
    }

    pub fn total(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &v| acc + v)
    }

    /// Months (1-based) with a negative total. Negative loads are allowed but suspicious.
    pub fn negative_months(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v < T::zero())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Fourier coefficients of the interpolant. `b[5]` (the sixth sine term) is always zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicSeries<T> {
    pub a0: T,
    /// `a_1..a_6`
    pub a: [T; HARMONICS],
    /// `b_1..b_6`
    pub b: [T; HARMONICS],
}

/// Reduces `tau` into `[0, 12)`.
#[inline]
fn reduce<T: Scalar>(tau: T) -> T {
    let period: T = lit(12.0);
    let r = tau - period * (tau / period).floor();
    if r >= period {
        r - period
    } else {
        r
    }
}

/// Fits the series so that every month integral is reproduced exactly.
pub fn fit_harmonics<T: Scalar>(m: &MonthlyIntegrals<T>) -> HarmonicSeries<T> {
    let twelve: T = lit(12.0);
    let six: T = lit(6.0);
    let pi = T::PI();

    let a0 = m.values.iter().fold(T::zero(), |acc, &v| acc + v / twelve);

    let mut a = [T::zero(); HARMONICS];
    let mut b = [T::zero(); HARMONICS];
    for j in 1..HARMONICS {
        let jf: T = lit(j as f64);
        let x = pi * jf / twelve;
        let gain = x / x.sin();
        let (mut sc, mut ss) = (T::zero(), T::zero());
        for (idx, &mt) in m.values.iter().enumerate() {
            // (j·T) mod 12 keeps the trig argument in [0, 2π).
            let k: T = lit(((j * (idx + 1)) % MONTHS) as f64);
            let (s, c) = (T::TAU() * k / twelve).sin_cos();
            sc = sc + mt / six * c;
            ss = ss + mt / six * s;
        }
        a[j - 1] = gain * sc;
        b[j - 1] = gain * ss;
    }

    // j = 6: cos(πT) = (-1)^T exactly; gain (π/2)/sin(π/2) = π/2.
    let alt = m.values.iter().enumerate().fold(T::zero(), |acc, (idx, &mt)| {
        let term = mt / twelve;
        if (idx + 1) % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    a[HARMONICS - 1] = pi / lit(2.0) * alt;
    b[HARMONICS - 1] = T::zero();

    HarmonicSeries { a0, a, b }
}

impl<T: Scalar> HarmonicSeries<T> {
    /// Constant series `y ≡ c`.
    pub fn constant(c: T) -> Self {
        Self {
            a0: c,
            a: [T::zero(); HARMONICS],
            b: [T::zero(); HARMONICS],
        }
    }

    /// `y(tau)`; any real `tau` is accepted (the series is 12-periodic).
    pub fn eval(&self, tau: T) -> T {
        let r = reduce(tau);
        let twelve: T = lit(12.0);
        let mut y = self.a0;
        for j in 0..HARMONICS {
            let jf: T = lit((j + 1) as f64);
            let (s, c) = (T::TAU() * jf * r / twelve).sin_cos();
            y = y + self.a[j] * c + self.b[j] * s;
        }
        y
    }

    /// Periodic part of the antiderivative (without the `a0·tau` term).
    fn periodic_antiderivative(&self, tau: T) -> T {
        let r = reduce(tau);
        let twelve: T = lit(12.0);
        let mut acc = T::zero();
        for j in 0..HARMONICS {
            let jf: T = lit((j + 1) as f64);
            let omega = T::TAU() * jf / twelve;
            let (s, c) = (omega * r).sin_cos();
            acc = acc + (self.a[j] * s - self.b[j] * c) / omega;
        }
        acc
    }

    /// Exact `∫_{tau_a}^{tau_b} y(τ) dτ`.
    pub fn integrate(&self, tau_a: T, tau_b: T) -> Result<T> {
        if !(tau_a.is_finite() && tau_b.is_finite()) {
            return Err(Error::NonFinite("integration bound".into()));
        }
        if tau_a > tau_b {
            return Err(Error::ReversedBounds {
                a: to_f64(tau_a),
                b: to_f64(tau_b),
            });
        }
        if tau_a == tau_b {
            return Ok(T::zero());
        }
        Ok(self.a0 * (tau_b - tau_a) + self.periodic_antiderivative(tau_b)
            - self.periodic_antiderivative(tau_a))
    }

    /// Integral over month `month` (1-based), i.e. over `[T - 1/2, T + 1/2]`.
    pub fn month_integral(&self, month: usize) -> T {
        let t: T = lit(month as f64);
        let half: T = lit(0.5);
        self.integrate(t - half, t + half)
            .expect("ordered finite bounds")
    }

    /// Sub-intervals of one period `[0.5, 12.5]` where `y < 0`, located by
    /// sampling on a fine grid and refining sign changes by bisection.
    pub fn negative_intervals(&self) -> Vec<(T, T)> {
        const SAMPLES: usize = 12 * 240;
        let lo: T = lit(0.5);
        let step: T = lit(12.0 / SAMPLES as f64);
        let at = |i: usize| lo + step * lit(i as f64);

        let refine = |mut a: T, mut b: T| {
            // Sign of y differs between a and b.
            let neg_a = self.eval(a) < T::zero();
            for _ in 0..60 {
                let mid = (a + b) / lit(2.0);
                if (self.eval(mid) < T::zero()) == neg_a {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            (a + b) / lit(2.0)
        };

        let mut out = Vec::new();
        let mut start: Option<T> = (self.eval(lo) < T::zero()).then_some(lo);
        let mut prev_neg = start.is_some();
        for i in 1..=SAMPLES {
            let neg = self.eval(at(i)) < T::zero();
            if neg != prev_neg {
                let x = refine(at(i - 1), at(i));
                if neg {
                    start = Some(x);
                } else if let Some(s) = start.take() {
                    out.push((s, x));
                }
            }
            prev_neg = neg;
        }
        if let Some(s) = start {
            out.push((s, at(SAMPLES)));
        }
        out
    }
}

/// `∫_{T-1/2}^{T+1/2} y − M_T` for every month.
pub fn month_integral_residuals<T: Scalar>(
    h: &HarmonicSeries<T>,
    m: &MonthlyIntegrals<T>,
) -> [T; MONTHS] {
    let mut out = [T::zero(); MONTHS];
    for (i, r) in out.iter_mut().enumerate() {
        *r = h.month_integral(i + 1) - m.values[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// Direct transcription of the coefficient formulas, every harmonic with
    /// the generic `cos(2πjT/12)`/`sin` form and no argument folding.
    fn coefficient_oracle(m: &[f64; 12]) -> ([f64; 7], [f64; 7]) {
        let mut a = [0.0; 7];
        let mut b = [0.0; 7];
        a[0] = m.iter().map(|v| v / 12.0).sum();
        for j in 1..=5 {
            let jf = j as f64;
            let gain = (PI * jf / 12.0) / (PI * jf / 12.0).sin();
            let mut sc = 0.0;
            let mut ss = 0.0;
            for t in 1..=12 {
                let tf = t as f64;
                sc += m[t - 1] / 6.0 * (2.0 * PI * jf * tf / 12.0).cos();
                ss += m[t - 1] / 6.0 * (2.0 * PI * jf * tf / 12.0).sin();
            }
            a[j] = gain * sc;
            b[j] = gain * ss;
        }
        let gain6 = (PI / 2.0) / (PI / 2.0).sin();
        a[6] = gain6 * (1..=12).map(|t| m[t - 1] / 12.0 * (PI * t as f64).cos()).sum::<f64>();
        (a, b)
    }

    fn oracle_eval(a: &[f64; 7], b: &[f64; 7], tau: f64) -> f64 {
        a[0] + (1..=6)
            .map(|j| {
                let w = 2.0 * PI * j as f64 * tau / 12.0;
                a[j] * w.cos() + b[j] * w.sin()
            })
            .sum::<f64>()
    }

    #[test]
    fn constant_input_gives_constant_series() {
        let c: f64 = 123.25;
        let m = MonthlyIntegrals::new([c; 12]).unwrap();
        let h = fit_harmonics(&m);
        assert!((h.a0 - c).abs() < 1e-12 * c);
        for j in 0..6 {
            assert!(h.a[j].abs() < 1e-12 * c, "a{} = {}", j + 1, h.a[j]);
            assert!(h.b[j].abs() < 1e-12 * c, "b{} = {}", j + 1, h.b[j]);
        }
        assert_eq!(h.a[5], 0.0);
        for k in 0..50 {
            let tau = -30.0 + k as f64 * 1.37;
            assert!((h.eval(tau) - c).abs() < 1e-12 * c);
        }
        for r in month_integral_residuals(&h, &m) {
            assert!(r.abs() < 1e-12 * c);
        }
    }

    #[test]
    fn unit_impulse_matches_oracle() {
        let mut raw = [0.0f64; 12];
        raw[0] = 1.0;
        let m = MonthlyIntegrals::new(raw).unwrap();
        let h = fit_harmonics(&m);
        let (a, b) = coefficient_oracle(&raw);
        assert!((h.a0 - a[0]).abs() < 1e-15);
        for j in 1..=6 {
            assert!((h.a[j - 1] - a[j]).abs() < 1e-14, "a{j}");
            assert!((h.b[j - 1] - b[j]).abs() < 1e-14, "b{j}");
        }
        assert_eq!(h.b[5], 0.0);
        assert!((h.eval(1.0) - oracle_eval(&a, &b, 1.0)).abs() < 1e-14);
        let res = month_integral_residuals(&h, &m);
        assert!(res.iter().all(|r| r.abs() < 1e-14), "{res:?}");
    }

    #[test]
    fn coefficients_match_oracle_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let raw: [f64; 12] = std::array::from_fn(|_| rng.gen_range(0.0..1e4));
            let h = fit_harmonics(&MonthlyIntegrals::new(raw).unwrap());
            let (a, b) = coefficient_oracle(&raw);
            let scale = raw.iter().cloned().fold(1.0, f64::max);
            assert!((h.a0 - a[0]).abs() < 1e-13 * scale);
            for j in 1..=6 {
                assert!((h.a[j - 1] - a[j]).abs() < 1e-12 * scale);
                assert!((h.b[j - 1] - b[j]).abs() < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn perturbed_a0_shifts_every_residual() {
        let m = MonthlyIntegrals::new([5.0, 3.0, 8.0, 1.0, 0.0, 2.0, 9.0, 4.0, 4.0, 7.0, 6.0, 1.0])
            .unwrap();
        let mut h = fit_harmonics(&m);
        let delta: f64 = 0.125;
        h.a0 += delta;
        for r in month_integral_residuals(&h, &m) {
            assert!((r - delta).abs() < 1e-12);
        }
    }

    #[test]
    fn integrate_edge_cases() {
        let m = MonthlyIntegrals::new(std::array::from_fn(|i| (i * i) as f64)).unwrap();
        let h = fit_harmonics(&m);
        assert_eq!(h.integrate(3.3, 3.3).unwrap(), 0.0);
        assert!(matches!(h.integrate(2.0, 1.0), Err(Error::ReversedBounds { .. })));
        assert!(h.integrate(f64::NAN, 1.0).is_err());
        let year = h.integrate(0.5, 12.5).unwrap();
        assert!((year - m.total()).abs() < 1e-9 * m.total());
        // Additivity across an arbitrary split.
        let split = h.integrate(0.5, 4.77).unwrap() + h.integrate(4.77, 12.5).unwrap();
        assert!((split - year).abs() < 1e-9 * year);
    }

    #[test]
    fn non_finite_input_rejected() {
        let mut raw = [1.0f64; 12];
        raw[4] = f64::INFINITY;
        assert!(matches!(MonthlyIntegrals::new(raw), Err(Error::NonFinite(_))));
        assert!(MonthlyIntegrals::<f64>::from_slice(&[1.0; 11]).is_err());
    }

    #[test]
    fn negative_months_reported() {
        let mut raw = [1.0f64; 12];
        raw[6] = -5.0;
        let m = MonthlyIntegrals::new(raw).unwrap();
        assert_eq!(m.negative_months(), vec![7]);
    }

    #[test]
    fn overshoot_is_reported_not_clamped() {
        // A single spike forces the interpolant below zero elsewhere.
        let mut raw = [0.0f64; 12];
        raw[5] = 100.0;
        let m = MonthlyIntegrals::new(raw).unwrap();
        let h = fit_harmonics(&m);
        let neg = h.negative_intervals();
        assert!(!neg.is_empty());
        for &(a, b) in &neg {
            assert!(a < b);
            assert!(h.eval(0.5 * (a + b)) < 0.0);
        }
        // Month integrals still hold exactly.
        assert!(month_integral_residuals(&h, &m).iter().all(|r| r.abs() < 1e-12));

        let pos = fit_harmonics(&MonthlyIntegrals::new([10.0; 12]).unwrap());
        assert!(pos.negative_intervals().is_empty());
    }

    #[test]
    fn shift_equivariance() {
        let raw = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0, 5.0, 8.0];
        let mut rotated = [0.0; 12];
        for t in 0..12 {
            rotated[(t + 1) % 12] = raw[t];
        }
        let h = fit_harmonics(&MonthlyIntegrals::new(raw).unwrap());
        let hr = fit_harmonics(&MonthlyIntegrals::new(rotated).unwrap());
        for k in 0..=1200 {
            let tau = 0.5 + k as f64 * 0.01;
            assert!((hr.eval(tau) - h.eval(tau - 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn linearity() {
        let m1 = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0, 5.0, 8.0];
        let m2 = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0, 8.0, 2.0, 8.0, 4.0, 5.0];
        let (alpha, beta) = (2.5, -0.75);
        let combo: [f64; 12] = std::array::from_fn(|i| alpha * m1[i] + beta * m2[i]);
        let h1 = fit_harmonics(&MonthlyIntegrals::new(m1).unwrap());
        let h2 = fit_harmonics(&MonthlyIntegrals::new(m2).unwrap());
        let hc = fit_harmonics(&MonthlyIntegrals::new(combo).unwrap());
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
        assert!(close(hc.a0, alpha * h1.a0 + beta * h2.a0));
        for j in 0..6 {
            assert!(close(hc.a[j], alpha * h1.a[j] + beta * h2.a[j]));
            assert!(close(hc.b[j], alpha * h1.b[j] + beta * h2.b[j]));
        }
    }

    #[test]
    fn f32_instantiation() {
        let raw: [f32; 12] = std::array::from_fn(|i| 100.0 + 10.0 * i as f32);
        let m = MonthlyIntegrals::new(raw).unwrap();
        let h = fit_harmonics(&m);
        for (i, r) in month_integral_residuals(&h, &m).iter().enumerate() {
            assert!(r.abs() < 1e-4 * raw[i], "month {}: {r}", i + 1);
        }
    }

    proptest! {
        #[test]
        fn prop_exact_fit(raw in prop::array::uniform12(0.0f64..1e4)) {
            let m = MonthlyIntegrals::new(raw).unwrap();
            let h = fit_harmonics(&m);
            for (i, r) in month_integral_residuals(&h, &m).iter().enumerate() {
                prop_assert!(r.abs() < 1e-9 * raw[i].abs().max(1.0));
            }
        }

        #[test]
        fn prop_periodic(raw in prop::array::uniform12(-1e3f64..1e4), tau in -100.0f64..100.0) {
            let h = fit_harmonics(&MonthlyIntegrals::new(raw).unwrap());
            let scale = raw.iter().fold(1.0f64, |a, v| a.max(v.abs()));
            prop_assert!((h.eval(tau) - h.eval(tau + 12.0)).abs() < 1e-10 * scale);
        }
    }
}
