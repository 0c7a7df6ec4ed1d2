//! Reference day profiles, seasonal morphing, and the raw year series.

use crate::calendar::{
    season_of, season_position, weekday_of, Season, SeasonCalendar, Weekday, YearContext,
    HOURS_PER_DAY,
};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};
use crate::series::{GridStep, YearSeries};

/// A dimensionless 24 h load shape sampled on a fixed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DayProfile<T> {
    step: GridStep,
    samples: Vec<T>,
}

impl<T: Scalar> DayProfile<T> {
    pub fn new(step: GridStep, samples: Vec<T>) -> Result<Self> {
        let n = step.steps_per_day() as usize;
        if samples.len() != n {
            return Err(Error::Profile(format!(
                "{} samples, expected {n} for dt = {} h",
                samples.len(),
                step.hours()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::Profile(format!("sample {i} is not finite")));
        }
        if let Some(i) = samples.iter().position(|v| *v < T::zero()) {
            return Err(Error::Profile(format!("sample {i} is negative")));
        }
        if samples.iter().all(|v| v.is_zero()) {
            return Err(Error::Profile("profile is identically zero".into()));
        }
        Ok(Self { step, samples })
    }

    pub fn step(&self) -> GridStep {
        self.step
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            step: self.step,
            samples: self.samples.iter().map(|&v| v * factor).collect(),
        }
    }
}

/// Profiles for every (weekday, season) slot. Slots may share a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileLibrary<T> {
    step: GridStep,
    profiles: Vec<DayProfile<T>>,
    /// `slots[weekday.index()][season.index()]` indexes into `profiles`.
    slots: [[usize; 4]; 7],
}

impl<T: Scalar> ProfileLibrary<T> {
    pub fn new(profiles: Vec<DayProfile<T>>, slots: [[usize; 4]; 7]) -> Result<Self> {
        let step = profiles
            .first()
            .ok_or_else(|| Error::Library("no profiles".into()))?
            .step;
        if let Some(p) = profiles.iter().find(|p| p.step != step) {
            return Err(Error::Library(format!(
                "mixed grid steps: {} h and {} h",
                step.hours(),
                p.step.hours()
            )));
        }
        for (d, row) in slots.iter().enumerate() {
            for (s, &idx) in row.iter().enumerate() {
                if idx >= profiles.len() {
                    return Err(Error::Library(format!(
                        "slot ({}, {}) refers to missing profile {idx}",
                        Weekday::ALL[d],
                        Season::ALL[s]
                    )));
                }
            }
        }
        Ok(Self {
            step,
            profiles,
            slots,
        })
    }

    /// Library built from a per-slot function; equal profiles are not deduplicated.
    pub fn from_fn<F>(mut f: F) -> Result<Self>
    where
        F: FnMut(Weekday, Season) -> DayProfile<T>,
    {
        let mut profiles = Vec::with_capacity(28);
        let mut slots = [[0usize; 4]; 7];
        for d in Weekday::ALL {
            for s in Season::ALL {
                slots[d.index()][s.index()] = profiles.len();
                profiles.push(f(d, s));
            }
        }
        Self::new(profiles, slots)
    }

    /// Every slot uses `profile`.
    pub fn uniform(profile: DayProfile<T>) -> Self {
        Self::new(vec![profile], [[0; 4]; 7]).expect("single profile library")
    }

    pub fn step(&self) -> GridStep {
        self.step
    }

    pub fn get(&self, weekday: Weekday, season: Season) -> &DayProfile<T> {
        &self.profiles[self.slots[weekday.index()][season.index()]]
    }

    pub fn profiles(&self) -> &[DayProfile<T>] {
        &self.profiles
    }

    pub fn slots(&self) -> &[[usize; 4]; 7] {
        &self.slots
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            step: self.step,
            profiles: self.profiles.iter().map(|p| p.scaled(factor)).collect(),
            slots: self.slots,
        }
    }
}

/// `lo + p·(hi − lo)` sample-wise; `p = 0` yields `lo` and `p = 1` yields `hi` bit-exactly.
pub fn morph_day<T: Scalar>(
    lib: &ProfileLibrary<T>,
    weekday: Weekday,
    s_lo: Season,
    s_hi: Season,
    p: T,
) -> Result<DayProfile<T>> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::MorphFraction(to_f64(p)));
    }
    let lo = lib.get(weekday, s_lo);
    let hi = lib.get(weekday, s_hi);
    if p == T::one() {
        return Ok(hi.clone());
    }
    let samples = lo
        .samples
        .iter()
        .zip(&hi.samples)
        .map(|(&a, &b)| a + p * (b - a))
        .collect();
    Ok(DayProfile {
        step: lib.step,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MorphMode {
    /// Blend adjacent seasons linearly between season midpoints.
    #[default]
    Linear,
    /// Each day uses the profile of the season it belongs to; seasons switch abruptly.
    Off,
}

/// Blend selection for one civil day.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DayBlend<T> {
    pub weekday: Weekday,
    pub s_lo: Season,
    pub s_hi: Season,
    pub p: T,
}

/// Weekday and seasonal blend for civil day `day` (0-based), sampled at the day's noon.
pub fn day_blend<T: Scalar>(
    cal: &SeasonCalendar,
    ctx: &YearContext,
    day: u32,
    mode: MorphMode,
) -> Result<DayBlend<T>> {
    let noon: T = lit(f64::from(day * HOURS_PER_DAY + HOURS_PER_DAY / 2));
    let weekday = weekday_of(ctx, noon)?;
    Ok(match mode {
        MorphMode::Linear => {
            let pos = season_position(cal, ctx, noon)?;
            DayBlend {
                weekday,
                s_lo: pos.s_lo,
                s_hi: pos.s_hi,
                p: pos.p,
            }
        }
        MorphMode::Off => {
            let s = season_of(cal, ctx, noon)?;
            DayBlend {
                weekday,
                s_lo: s,
                s_hi: s.next(),
                p: T::zero(),
            }
        }
    })
}

/// Strings morphed day profiles together into the raw year series `w`.
pub fn build_raw_year<T: Scalar>(
    lib: &ProfileLibrary<T>,
    cal: &SeasonCalendar,
    ctx: &YearContext,
    mode: MorphMode,
) -> Result<YearSeries<T>> {
    if cal.year() != ctx.year() {
        return Err(Error::CalendarYearMismatch {
            calendar: cal.year(),
            context: ctx.year(),
        });
    }
    let mut values = Vec::with_capacity(lib.step.points_in_year(ctx));
    for day in 0..ctx.days_in_year() {
        let blend = day_blend::<T>(cal, ctx, day, mode)?;
        let profile = morph_day(lib, blend.weekday, blend.s_lo, blend.s_hi, blend.p)?;
        values.extend_from_slice(&profile.samples);
    }
    YearSeries::new(ctx, lib.step, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(dt: f64) -> GridStep {
        GridStep::from_hours(dt).unwrap()
    }

    fn constant(dt: f64, v: f64) -> DayProfile<f64> {
        let s = step(dt);
        DayProfile::new(s, vec![v; s.steps_per_day() as usize]).unwrap()
    }

    /// Distinct, season- and weekday-dependent profiles at dt = 1 h.
    fn seasonal_library() -> ProfileLibrary<f64> {
        ProfileLibrary::from_fn(|d, s| {
            let samples = (0..24)
                .map(|h| 1.0 + 0.1 * s.number() as f64 + 0.01 * d.number() as f64 + (h % 5) as f64 * 0.2 * s.number() as f64)
                .collect();
            DayProfile::new(step(1.0), samples).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn profile_validation() {
        let s = step(0.25);
        assert!(DayProfile::new(s, vec![1.0; 96]).is_ok());
        assert!(DayProfile::new(s, vec![1.0; 95]).is_err());
        assert!(DayProfile::new(s, vec![0.0; 96]).is_err());
        let mut neg = vec![1.0; 96];
        neg[10] = -0.1;
        assert!(DayProfile::new(s, neg).is_err());
        let mut nan = vec![1.0; 96];
        nan[0] = f64::NAN;
        assert!(DayProfile::new(s, nan).is_err());
    }

    #[test]
    fn library_validation() {
        let a = constant(1.0, 1.0);
        let b = constant(0.5, 1.0);
        assert!(matches!(
            ProfileLibrary::new(vec![a.clone(), b], [[0; 4]; 7]),
            Err(Error::Library(_))
        ));
        assert!(ProfileLibrary::new(vec![a.clone()], [[1; 4]; 7]).is_err());
        assert!(ProfileLibrary::<f64>::new(vec![], [[0; 4]; 7]).is_err());
        let lib = ProfileLibrary::uniform(a.clone());
        assert_eq!(lib.get(Weekday::Friday, Season::Spring), &a);
    }

    #[test]
    fn morph_endpoints_and_midpoint() {
        let lib = seasonal_library();
        let d = Weekday::Friday;
        let lo = lib.get(d, Season::Spring).samples().to_vec();
        let hi = lib.get(d, Season::Summer).samples().to_vec();
        let at0 = morph_day(&lib, d, Season::Spring, Season::Summer, 0.0).unwrap();
        assert_eq!(at0.samples(), &lo[..]);
        let at1 = morph_day(&lib, d, Season::Spring, Season::Summer, 1.0).unwrap();
        assert_eq!(at1.samples(), &hi[..]);
        let half = morph_day(&lib, d, Season::Spring, Season::Summer, 0.5).unwrap();
        for ((m, u), v) in half.samples().iter().zip(&lo).zip(&hi) {
            assert!((m - 0.5 * (u + v)).abs() <= 1e-15);
        }
    }

    #[test]
    fn morph_fraction_out_of_range() {
        let lib = seasonal_library();
        for p in [-0.01, 1.01, f64::NAN] {
            assert!(matches!(
                morph_day(&lib, Weekday::Monday, Season::Winter, Season::Spring, p),
                Err(Error::MorphFraction(_))
            ));
        }
    }

    #[test]
    fn constant_library_gives_constant_year() {
        let ctx = YearContext::new(2023).unwrap();
        let cal = SeasonCalendar::meteorological(&ctx);
        let lib = ProfileLibrary::uniform(constant(0.25, 2.5));
        let w = build_raw_year(&lib, &cal, &ctx, MorphMode::Linear).unwrap();
        assert_eq!(w.len(), 35040);
        assert!(w.values().iter().all(|&v| v == 2.5));
    }

    #[test]
    fn raw_year_length_leap() {
        let ctx = YearContext::new(2024).unwrap();
        let cal = SeasonCalendar::meteorological(&ctx);
        let lib = seasonal_library();
        let w = build_raw_year(&lib, &cal, &ctx, MorphMode::Linear).unwrap();
        assert_eq!(w.len(), 8784);
        assert!(w.values().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn midpoint_day_is_pure_season() {
        let ctx = YearContext::new(2023).unwrap();
        let cal = SeasonCalendar::meteorological(&ctx);
        let lib = seasonal_library();
        let w = build_raw_year(&lib, &cal, &ctx, MorphMode::Linear).unwrap();
        for s in Season::ALL {
            let day = (cal.midpoint(s) / 24.0).floor() as u32;
            let wd = weekday_of(&ctx, cal.midpoint(s)).unwrap();
            assert_eq!(w.day(day as usize), lib.get(wd, s).samples(), "{s}");
        }
    }

    #[test]
    fn days_straddling_a_midpoint() {
        // Hand computation for 2023: μ_spring = 2532 h (day 105 noon),
        // μ_winter = 348 h, gap winter→spring = 2184 h. Day 104 noon is 24 h
        // before μ_spring, so p = 2160/2184 on the winter→spring ramp; day 106
        // is 24 h after, p = 24/2208 on the spring→summer ramp.
        let ctx = YearContext::new(2023).unwrap();
        let cal = SeasonCalendar::meteorological(&ctx);
        let before = day_blend::<f64>(&cal, &ctx, 104, MorphMode::Linear).unwrap();
        let after = day_blend::<f64>(&cal, &ctx, 106, MorphMode::Linear).unwrap();
        assert_eq!((before.s_lo, before.s_hi), (Season::Winter, Season::Spring));
        assert!((before.p - 2160.0 / 2184.0).abs() < 1e-15);
        assert_eq!((after.s_lo, after.s_hi), (Season::Spring, Season::Summer));
        assert!((after.p - 24.0 / 2208.0).abs() < 1e-15);

        // With weekday-independent profiles, both days differ from the pure
        // spring profile by at most one day's ramp increment times the
        // profile difference.
        let lib = ProfileLibrary::from_fn(|_, s| {
            let samples = (0..24).map(|h| 1.0 + s.number() as f64 * (1.0 + (h % 3) as f64)).collect();
            DayProfile::new(step(1.0), samples).unwrap()
        })
        .unwrap();
        let w = build_raw_year(&lib, &cal, &ctx, MorphMode::Linear).unwrap();
        let pure = lib.get(Weekday::Monday, Season::Spring).samples();
        let win = lib.get(Weekday::Monday, Season::Winter).samples();
        let sum = lib.get(Weekday::Monday, Season::Summer).samples();
        for i in 0..24 {
            let db = (w.day(104)[i] - pure[i]).abs();
            let da = (w.day(106)[i] - pure[i]).abs();
            assert!(db <= 24.0 / 2184.0 * (pure[i] - win[i]).abs() + 1e-12);
            assert!(da <= 24.0 / 2208.0 * (sum[i] - pure[i]).abs() + 1e-12);
        }
    }

    #[test]
    fn season_independent_library_is_identity() {
        let ctx = YearContext::new(2023).unwrap();
        let cal = SeasonCalendar::meteorological(&ctx);
        let lib = ProfileLibrary::from_fn(|d, _| {
            let samples = (0..24).map(|h| 0.3 + d.number() as f64 * 0.17 + h as f64 * 0.013).collect();
            DayProfile::new(step(1.0), samples).unwrap()
        })
        .unwrap();
        let w = build_raw_year(&lib, &cal, &ctx, MorphMode::Linear).unwrap();
        for day in 0..365u32 {
            let wd = ctx.weekday_of_jan1().add_days(day);
            assert_eq!(w.day(day as usize), lib.get(wd, Season::Winter).samples());
        }
    }

    #[test]
    fn daily_fraction_changes_are_bounded() {
        let ctx = YearContext::new(2023).unwrap();
        let cal = SeasonCalendar::meteorological(&ctx);
        let min_gap = Season::ALL
            .iter()
            .map(|&s| cal.midpoint_gap(s))
            .fold(f64::INFINITY, f64::min);
        let bound = 24.0 / min_gap;
        // Weight of each season in the daily blend; successive days differ by at most the bound.
        let weights = |b: DayBlend<f64>| {
            let mut w = [0.0; 4];
            w[b.s_lo.index()] += 1.0 - b.p;
            w[b.s_hi.index()] += b.p;
            w
        };
        let mut prev = weights(day_blend(&cal, &ctx, 0, MorphMode::Linear).unwrap());
        for day in 1..365 {
            let cur = weights(day_blend(&cal, &ctx, day, MorphMode::Linear).unwrap());
            for s in 0..4 {
                assert!((cur[s] - prev[s]).abs() <= bound + 1e-12, "day {day}");
            }
            prev = cur;
        }
    }

    #[test]
    fn no_morph_switches_abruptly_at_season_starts() {
        let ctx = YearContext::new(2023).unwrap();
        let cal = SeasonCalendar::meteorological(&ctx);
        let lib = ProfileLibrary::from_fn(|_, s| constant(1.0, s.number() as f64)).unwrap();
        let w = build_raw_year(&lib, &cal, &ctx, MorphMode::Off).unwrap();
        let day_value = |d: usize| w.day(d)[0];
        assert_eq!(day_value(0), 1.0);
        assert_eq!(day_value(58), 1.0); // Feb 28
        assert_eq!(day_value(59), 2.0); // Mar 1
        assert_eq!(day_value(151), 3.0); // Jun 1
        assert_eq!(day_value(243), 4.0); // Sep 1
        assert_eq!(day_value(333), 4.0); // Nov 30
        assert_eq!(day_value(334), 1.0); // Dec 1
    }

    #[test]
    fn calendar_year_mismatch_rejected() {
        let ctx = YearContext::new(2023).unwrap();
        let cal = SeasonCalendar::meteorological(&YearContext::new(2024).unwrap());
        let lib = ProfileLibrary::uniform(constant(1.0, 1.0));
        assert!(build_raw_year(&lib, &cal, &ctx, MorphMode::Linear).is_err());
    }
}
