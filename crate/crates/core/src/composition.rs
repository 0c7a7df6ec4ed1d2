//! Week-window amplitude scaling of the raw series onto the harmonic envelope.
//!
//! The interpolant lives on the month-coordinate axis; pulled back to
//! wall-clock hours it becomes the rate `y(τ(t))·dτ/dt`, whose integral over
//! any calendar month is exactly that month's total. For each grid point
//! `t_i` the scaling factor is
//!
//! ```text
//! α_i = ∫_{t_i-W}^{t_i+W} y_rate / ∫_{t_i-W}^{t_i+W} w
//! ```
//!
//! and the synthesized series is `R_i = α_i · w_i`. Both integrals treat the
//! year as periodic, so windows near New Year wrap around.

use crate::calendar::{month_coordinate, YearContext};
use crate::error::{Error, Result};
use crate::harmonic::{fit_harmonics, HarmonicSeries, MonthlyIntegrals, MONTHS};
use crate::morphing::{build_raw_year, MorphMode, ProfileLibrary};
use crate::calendar::SeasonCalendar;
use crate::scalar::{lit, to_f64, Scalar};
use crate::series::{GridStep, YearSeries};

/// Default window half-width: one week.
pub const DEFAULT_WINDOW_HOURS: f64 = 168.0;

const RELATIVE_ERROR_FLOOR: f64 = 1e-12;

/// Interpolant as an hourly rate at wall-clock time `t`.
pub fn y_rate<T: Scalar>(h: &HarmonicSeries<T>, ctx: &YearContext, t: T) -> Result<T> {
    let c = month_coordinate(ctx, t)?;
    Ok(h.eval(c.tau) * c.jacobian)
}

/// `∫_a^b y_rate(t) dt` for `0 ≤ a ≤ b ≤ hours_in_year`.
pub fn integral_y<T: Scalar>(h: &HarmonicSeries<T>, ctx: &YearContext, a: T, b: T) -> Result<T> {
    if a > b {
        return Err(Error::ReversedBounds {
            a: to_f64(a),
            b: to_f64(b),
        });
    }
    let ta = month_coordinate(ctx, a)?.tau;
    let tb = month_coordinate(ctx, b)?.tau;
    h.integrate(ta, tb)
}

/// `∫_a^b y_rate` over the periodically extended year; any `a ≤ b`.
pub fn cyclic_integral_y<T: Scalar>(
    h: &HarmonicSeries<T>,
    ctx: &YearContext,
    a: T,
    b: T,
) -> Result<T> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("integration bound".into()));
    }
    if a > b {
        return Err(Error::ReversedBounds {
            a: to_f64(a),
            b: to_f64(b),
        });
    }
    let year: T = lit(f64::from(ctx.hours_in_year()));
    let span = b - a;
    let full_years = (span / year).floor();
    let rem = span - full_years * year;
    let mut start = a - year * (a / year).floor();
    if start >= year {
        start = start - year;
    }
    let end = start + rem;
    let piece = if end <= year {
        integral_y(h, ctx, start, end)?
    } else {
        integral_y(h, ctx, start, year)? + integral_y(h, ctx, T::zero(), end - year)?
    };
    let whole = if full_years > T::zero() {
        full_years * h.integrate(lit(0.5), lit(12.5))?
    } else {
        T::zero()
    };
    Ok(whole + piece)
}

/// Numerator of the scaling factor: `∫_{t_i-W}^{t_i+W} y_rate`, wrapping across the year.
pub fn window_integral_y<T: Scalar>(
    h: &HarmonicSeries<T>,
    ctx: &YearContext,
    t_i: T,
    half_width: T,
) -> Result<T> {
    if !(half_width > T::zero()) {
        return Err(Error::NonPositiveWindow(to_f64(half_width)));
    }
    cyclic_integral_y(h, ctx, t_i - half_width, t_i + half_width)
}

fn window_steps(step: GridStep, half_width: f64) -> Result<usize> {
    if !(half_width > 0.0) {
        return Err(Error::NonPositiveWindow(half_width));
    }
    match step.steps_in(half_width) {
        Some(n) if n > 0 => Ok(n),
        _ => Err(Error::WindowNotMultiple {
            window: half_width,
            dt: step.hours(),
        }),
    }
}

/// Denominator of the scaling factor: left-rectangle integral of `w` over
/// `[t_i - W, t_i + W)`, i.e. `dt` times the sum of the `2W/dt` samples
/// starting at the grid index of `t_i - W`, taken cyclically.
pub fn window_integral_w<T: Scalar>(w: &YearSeries<T>, t_i: f64, half_width: f64) -> Result<T> {
    let half = window_steps(w.step(), half_width)?;
    let n = w.len();
    let dt = w.dt();
    let first = ((t_i - half_width) / dt + 1e-9).floor() as i64;
    let start = first.rem_euclid(n as i64) as usize;
    let values = w.values();
    let sum = (0..2 * half).fold(T::zero(), |acc, k| acc + values[(start + k) % n]);
    let integral = w.step().hours_as::<T>() * sum;
    if !(integral > T::zero()) {
        return Err(Error::DegenerateWindow {
            index: ((t_i / dt).round() as i64).rem_euclid(n as i64) as usize,
            t_hours: t_i,
            integral: to_f64(integral),
        });
    }
    Ok(integral)
}

/// Scaling factors `α_i` on the grid of the raw series.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingSeries<T> {
    series: YearSeries<T>,
}

/// Summary statistics of a [`ScalingSeries`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaStats {
    pub min: f64,
    pub max: f64,
    /// `max_i |α_{i+1}/α_i − 1|` over consecutive grid points, including the year wrap.
    pub max_step_ratio: f64,
    pub max_abs_step: f64,
}

impl<T: Scalar> ScalingSeries<T> {
    pub fn values(&self) -> &[T] {
        self.series.values()
    }

    pub fn series(&self) -> &YearSeries<T> {
        &self.series
    }

    pub fn stats(&self) -> AlphaStats {
        let v = self.series.values();
        let n = v.len();
        let mut stats = AlphaStats {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            max_step_ratio: 0.0,
            max_abs_step: 0.0,
        };
        for i in 0..n {
            let a = to_f64(v[i]);
            let b = to_f64(v[(i + 1) % n]);
            stats.min = stats.min.min(a);
            stats.max = stats.max.max(a);
            stats.max_step_ratio = stats.max_step_ratio.max((b / a - 1.0).abs());
            stats.max_abs_step = stats.max_abs_step.max((b - a).abs());
        }
        stats
    }
}

/// Cyclic window sum of `len` samples starting at `start` using a prefix array.
fn cyclic_window_sum<T: Scalar>(prefix: &[T], start: usize, len: usize) -> T {
    let n = prefix.len() - 1;
    let full = len / n;
    let rem = len % n;
    let whole = lit::<T>(full as f64) * prefix[n];
    let end = start + rem;
    let part = if end <= n {
        prefix[end] - prefix[start]
    } else {
        (prefix[n] - prefix[start]) + prefix[end - n]
    };
    whole + part
}

/// `α_i` for every grid point of `w`.
pub fn compute_alpha<T: Scalar>(
    h: &HarmonicSeries<T>,
    ctx: &YearContext,
    w: &YearSeries<T>,
    half_width: f64,
) -> Result<ScalingSeries<T>> {
    if w.year() != ctx.year() {
        return Err(Error::GridMismatch(format!(
            "series for {} used with year {}",
            w.year(),
            ctx.year()
        )));
    }
    let half = window_steps(w.step(), half_width)?;
    let n = w.len();
    let dt_t: T = w.step().hours_as();
    let half_t: T = lit(half_width);

    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(T::zero());
    for &v in w.values() {
        let last = *prefix.last().unwrap();
        prefix.push(last + v);
    }

    let mut alpha = Vec::with_capacity(n);
    for i in 0..n {
        let start = (i + n * (half / n + 1) - half) % n;
        let denom = dt_t * cyclic_window_sum(&prefix, start, 2 * half);
        if !(denom > T::zero()) {
            return Err(Error::DegenerateWindow {
                index: i,
                t_hours: w.time_at(i),
                integral: to_f64(denom),
            });
        }
        let t_i: T = lit(w.time_at(i));
        let numer = window_integral_y(h, ctx, t_i, half_t)?;
        alpha.push(numer / denom);
    }
    Ok(ScalingSeries {
        series: YearSeries::new(ctx, w.step(), alpha)?,
    })
}

/// The final load series `R`; same grid as the raw series.
pub type SynthesizedSeries<T> = YearSeries<T>;

/// `R_i = α_i · w_i`.
pub fn synthesize<T: Scalar>(
    alpha: &ScalingSeries<T>,
    w: &YearSeries<T>,
) -> Result<SynthesizedSeries<T>> {
    if !alpha.series.same_grid(w) {
        return Err(Error::GridMismatch(format!(
            "scaling series has {} points at dt = {} h, raw series {} points at dt = {} h",
            alpha.series.len(),
            alpha.series.dt(),
            w.len(),
            w.dt()
        )));
    }
    Ok(w.map_indexed(|i, v| alpha.series.values()[i] * v))
}

/// Outcome of comparing `∫R` against `∫y_rate` on one interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalCheck<T> {
    /// Interval bounds in hours after snapping to the grid.
    pub start_h: f64,
    pub end_h: f64,
    pub expected: T,
    pub actual: T,
    pub relative_error: T,
}

/// Checks integral preservation on each `(a, b)` interval (hours, within the year).
pub fn verify_intervals<T: Scalar>(
    r: &SynthesizedSeries<T>,
    h: &HarmonicSeries<T>,
    ctx: &YearContext,
    intervals: &[(f64, f64)],
) -> Result<Vec<IntervalCheck<T>>> {
    if r.year() != ctx.year() {
        return Err(Error::GridMismatch(format!(
            "series for {} used with year {}",
            r.year(),
            ctx.year()
        )));
    }
    let hours = f64::from(ctx.hours_in_year());
    let dt = r.dt();
    let dt_t: T = r.step().hours_as();
    intervals
        .iter()
        .map(|&(a, b)| {
            if !(a.is_finite() && b.is_finite()) || a > b || a < 0.0 || b > hours {
                return Err(Error::Config(format!(
                    "malformed interval [{a}, {b}] for a year of {hours} h"
                )));
            }
            let ia = (a / dt).round() as usize;
            let ib = (b / dt).round() as usize;
            let (start_h, end_h) = (ia as f64 * dt, ib as f64 * dt);
            let expected = integral_y(h, ctx, lit(start_h), lit(end_h))?;
            let actual = dt_t
                * r.values()[ia..ib]
                    .iter()
                    .fold(T::zero(), |acc, &v| acc + v);
            let floor: T = lit(RELATIVE_ERROR_FLOOR);
            let relative_error = (actual - expected).abs() / expected.abs().max(floor);
            Ok(IntervalCheck {
                start_h,
                end_h,
                expected,
                actual,
                relative_error,
            })
        })
        .collect()
}

/// Calendar-month intervals in hours, January first.
pub fn month_intervals(ctx: &YearContext) -> Vec<(f64, f64)> {
    (1..=MONTHS)
        .map(|m| {
            let (a, b) = ctx.month_span(m);
            (f64::from(a), f64::from(b))
        })
        .collect()
}

/// Every intermediate product of one synthesis run.
#[derive(Debug, Clone)]
pub struct Synthesis<T> {
    pub harmonics: HarmonicSeries<T>,
    pub raw: YearSeries<T>,
    pub alpha: ScalingSeries<T>,
    pub series: SynthesizedSeries<T>,
    pub monthly: Vec<IntervalCheck<T>>,
    pub yearly: IntervalCheck<T>,
}

/// Fit → raw year → scaling → synthesis → checks on the 12 months and the whole year.
pub fn synthesize_year<T: Scalar>(
    months: &MonthlyIntegrals<T>,
    lib: &ProfileLibrary<T>,
    cal: &SeasonCalendar,
    ctx: &YearContext,
    mode: MorphMode,
    half_width: f64,
) -> Result<Synthesis<T>> {
    let harmonics = fit_harmonics(months);
    let raw = build_raw_year(lib, cal, ctx, mode)?;
    let alpha = compute_alpha(&harmonics, ctx, &raw, half_width)?;
    let series = synthesize(&alpha, &raw)?;
    let mut intervals = month_intervals(ctx);
    intervals.push((0.0, f64::from(ctx.hours_in_year())));
    let mut checks = verify_intervals(&series, &harmonics, ctx, &intervals)?;
    let yearly = checks.pop().expect("yearly interval");
    Ok(Synthesis {
        harmonics,
        raw,
        alpha,
        series,
        monthly: checks,
        yearly,
    })
}
