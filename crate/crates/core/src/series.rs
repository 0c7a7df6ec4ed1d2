//! Uniform time grids over one year.

use crate::calendar::{YearContext, HOURS_PER_DAY};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Grid step that divides a day into a whole number of samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridStep {
    steps_per_day: u32,
}

impl GridStep {
    pub fn from_steps_per_day(steps_per_day: u32) -> Result<Self> {
        if steps_per_day == 0 {
            return Err(Error::GridStep(f64::INFINITY));
        }
        Ok(Self { steps_per_day })
    }

    /// Accepts `dt` (hours) when `24 / dt` is an integer to within 1e-9.
    pub fn from_hours(dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0 && dt <= 24.0) {
            return Err(Error::GridStep(dt));
        }
        let n = (f64::from(HOURS_PER_DAY) / dt).round();
        if (n * dt - f64::from(HOURS_PER_DAY)).abs() > 1e-9 {
            return Err(Error::GridStep(dt));
        }
        Ok(Self {
            steps_per_day: n as u32,
        })
    }

    pub fn steps_per_day(self) -> u32 {
        self.steps_per_day
    }

    pub fn hours(self) -> f64 {
        f64::from(HOURS_PER_DAY) / f64::from(self.steps_per_day)
    }

    pub fn hours_as<T: Scalar>(self) -> T {
        lit::<T>(f64::from(HOURS_PER_DAY)) / lit(f64::from(self.steps_per_day))
    }

    /// Number of grid points in the year of `ctx`.
    pub fn points_in_year(self, ctx: &YearContext) -> usize {
        (ctx.days_in_year() * self.steps_per_day) as usize
    }

    /// Number of steps spanning `hours`, if `hours` is a whole multiple of the step.
    pub fn steps_in(self, hours: f64) -> Option<usize> {
        let n = (hours * f64::from(self.steps_per_day) / f64::from(HOURS_PER_DAY)).round();
        let back = n * self.hours();
        ((back - hours).abs() <= 1e-9 * hours.abs().max(1.0) && n >= 0.0).then_some(n as usize)
    }
}

/// Values on the grid `t_i = i·dt`, `i = 0..hours_in_year/dt`, covering one year.
/// Sample `i` stands for the step `[t_i, t_i + dt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct YearSeries<T> {
    year: i32,
    step: GridStep,
    values: Vec<T>,
}

impl<T: Scalar> YearSeries<T> {
    pub fn new(ctx: &YearContext, step: GridStep, values: Vec<T>) -> Result<Self> {
        let expected = step.points_in_year(ctx);
        if values.len() != expected {
            return Err(Error::GridMismatch(format!(
                "{} samples for year {} at dt = {} h, expected {expected}",
                values.len(),
                ctx.year(),
                step.hours()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("series sample {i}")));
        }
        Ok(Self {
            year: ctx.year(),
            step,
            values,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn step(&self) -> GridStep {
        self.step
    }

    pub fn dt(&self) -> f64 {
        self.step.hours()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// Grid time of sample `i` in hours.
    pub fn time_at(&self, i: usize) -> f64 {
        i as f64 * self.step.hours()
    }

    pub fn same_grid<U>(&self, other: &YearSeries<U>) -> bool {
        self.year == other.year && self.step == other.step && self.values.len() == other.values.len()
    }

    /// Samples of civil day `day` (0-based).
    pub fn day(&self, day: usize) -> &[T] {
        let n = self.step.steps_per_day as usize;
        &self.values[day * n..(day + 1) * n]
    }

    /// Contiguous rows covering `[start_h, start_h + len_h)`, both snapped to the grid.
    pub fn slice_hours(&self, start_h: f64, len_h: f64) -> Result<&[T]> {
        let start = self
            .step
            .steps_in(start_h)
            .ok_or_else(|| Error::GridMismatch(format!("{start_h} h is not on the grid")))?;
        let len = self
            .step
            .steps_in(len_h)
            .ok_or_else(|| Error::GridMismatch(format!("{len_h} h is not on the grid")))?;
        self.values.get(start..start + len).ok_or_else(|| {
            Error::GridMismatch(format!("[{start_h}, {start_h} + {len_h}) h exceeds the year"))
        })
    }

    /// Left-rectangle integral `dt · Σ values`.
    pub fn integral(&self) -> T {
        self.step.hours_as::<T>() * self.values.iter().fold(T::zero(), |acc, &v| acc + v)
    }

    pub fn map_indexed<F: FnMut(usize, T) -> T>(&self, mut f: F) -> Self {
        Self {
            year: self.year,
            step: self.step,
            values: self.values.iter().enumerate().map(|(i, &v)| f(i, v)).collect(),
        }
    }

    pub fn map<F: FnMut(T) -> T>(&self, f: F) -> Self {
        Self {
            year: self.year,
            step: self.step,
            values: self.values.iter().copied().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_steps() {
        assert_eq!(GridStep::from_hours(0.25).unwrap().steps_per_day(), 96);
        assert_eq!(GridStep::from_hours(1.0 / 6.0).unwrap().steps_per_day(), 144);
        assert_eq!(GridStep::from_hours(1.0 / 12.0).unwrap().steps_per_day(), 288);
        assert!(GridStep::from_hours(0.7).is_err());
        assert_eq!(GridStep::from_hours(0.3).unwrap().steps_per_day(), 80);
        assert!(GridStep::from_hours(0.0).is_err());
        assert!(GridStep::from_hours(-1.0).is_err());
        assert!(GridStep::from_hours(f64::NAN).is_err());
        let s = GridStep::from_hours(0.25).unwrap();
        assert_eq!(s.steps_in(168.0), Some(672));
        assert_eq!(s.steps_in(0.1), None);
    }

    #[test]
    fn series_length_checked() {
        let ctx = YearContext::new(2023).unwrap();
        let step = GridStep::from_hours(1.0).unwrap();
        assert!(YearSeries::new(&ctx, step, vec![1.0; 8760]).is_ok());
        assert!(YearSeries::new(&ctx, step, vec![1.0; 8759]).is_err());
        let mut v = vec![1.0; 8760];
        v[3] = f64::NAN;
        assert!(YearSeries::new(&ctx, step, v).is_err());
    }

    #[test]
    fn week_slice_is_contiguous() {
        let ctx = YearContext::new(2023).unwrap();
        let step = GridStep::from_hours(0.25).unwrap();
        let s = YearSeries::new(&ctx, step, (0..35040).map(|i| i as f64).collect()).unwrap();
        let week = s.slice_hours(168.0, 168.0).unwrap();
        assert_eq!(week.len(), 672);
        assert_eq!(week[0], 672.0);
        assert_eq!(week[671], 1343.0);
        assert!(s.slice_hours(8700.0, 168.0).is_err());
        assert!(s.slice_hours(0.1, 168.0).is_err());
    }
}
