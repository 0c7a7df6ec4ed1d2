//! Calendar semantics: real month lengths, weekdays, seasons and the mapping
//! between wall-clock hours and the uniform month-coordinate axis.
//!
//! Time inside a year is measured in hours since Jan 1 00:00 (naive local
//! time, no DST). The month-coordinate axis places month `T` (1-based) on
//! `[T - 1/2, T + 1/2]`, so the whole year covers `[0.5, 12.5]`. The map
//! between the two is piecewise affine with one piece per calendar month.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};

pub const HOURS_PER_DAY: u32 = 24;

const DAYS_IN_MONTH: [u32; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

fn days_in_month(year: i32, month: u32) -> u32 {
    if month == 2 && is_leap_year(year) {
        29
    } else {
        DAYS_IN_MONTH[(month - 1) as usize]
    }
}

/// ISO weekday, Monday = 1 through Sunday = 7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weekday {
    Monday = 1,
    Tuesday,
    Wednesday,
    Thursday,
    Friday,
    Saturday,
    Sunday,
}

impl Weekday {
    pub const ALL: [Weekday; 7] = [
        Weekday::Monday,
        Weekday::Tuesday,
        Weekday::Wednesday,
        Weekday::Thursday,
        Weekday::Friday,
        Weekday::Saturday,
        Weekday::Sunday,
    ];

    pub fn from_number(n: u32) -> Option<Self> {
        (1..=7).contains(&n).then(|| Self::ALL[(n - 1) as usize])
    }

    pub fn number(self) -> u32 {
        self as u32
    }

    pub fn index(self) -> usize {
        self as usize - 1
    }

    /// Weekday `days` days after `self`.
    pub fn add_days(self, days: u32) -> Self {
        Self::ALL[(self.index() + days as usize) % 7]
    }

    pub fn is_weekend(self) -> bool {
        matches!(self, Weekday::Saturday | Weekday::Sunday)
    }

    pub fn short_name(self) -> &'static str {
        ["mon", "tue", "wed", "thu", "fri", "sat", "sun"][self.index()]
    }
}

impl fmt::Display for Weekday {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Season index `s` in `1..=4`; with the default calendar these are the
/// meteorological seasons starting Dec 1, Mar 1, Jun 1 and Sep 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Season {
    Winter = 1,
    Spring,
    Summer,
    Autumn,
}

impl Season {
    pub const ALL: [Season; 4] = [Season::Winter, Season::Spring, Season::Summer, Season::Autumn];

    pub fn from_number(n: u32) -> Option<Self> {
        (1..=4).contains(&n).then(|| Self::ALL[(n - 1) as usize])
    }

    pub fn number(self) -> u32 {
        self as u32
    }

    pub fn index(self) -> usize {
        self as usize - 1
    }

    /// Cyclic successor (Autumn is followed by Winter).
    pub fn next(self) -> Self {
        Self::ALL[(self.index() + 1) % 4]
    }

    pub fn name(self) -> &'static str {
        ["winter", "spring", "summer", "autumn"][self.index()]
    }
}

impl fmt::Display for Season {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A day of the year without the year, written `MM-DD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonthDay {
    month: u32,
    day: u32,
}

impl MonthDay {
    /// Accepts Feb 29; whether it exists is checked against a concrete year.
    pub fn new(month: u32, day: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidDate {
                month,
                day,
                reason: "month must be 1..12".into(),
            });
        }
        let max = if month == 2 { 29 } else { DAYS_IN_MONTH[(month - 1) as usize] };
        if day == 0 || day > max {
            return Err(Error::InvalidDate {
                month,
                day,
                reason: format!("day must be 1..{max}"),
            });
        }
        Ok(Self { month, day })
    }

    pub fn month(self) -> u32 {
        self.month
    }

    pub fn day(self) -> u32 {
        self.day
    }

    /// Zero-based day of year in `ctx`.
    pub fn day_of_year(self, ctx: &YearContext) -> Result<u32> {
        if self.day > days_in_month(ctx.year, self.month) {
            return Err(Error::InvalidDate {
                month: self.month,
                day: self.day,
                reason: format!("does not exist in {}", ctx.year),
            });
        }
        Ok(ctx.month_boundaries[(self.month - 1) as usize] / HOURS_PER_DAY + self.day - 1)
    }
}

impl FromStr for MonthDay {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid date `{s}`: expected MM-DD"));
        let (m, d) = s.trim().split_once('-').ok_or_else(bad)?;
        let month = m.trim().parse().map_err(|_| bad())?;
        let day = d.trim().parse().map_err(|_| bad())?;
        MonthDay::new(month, day)
    }
}

impl fmt::Display for MonthDay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}-{:02}", self.month, self.day)
    }
}

/// Calendar facts for one Gregorian year.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YearContext {
    year: i32,
    hours_in_year: u32,
    month_boundaries: [u32; 13],
    weekday_of_jan1: Weekday,
}

impl YearContext {
    pub fn new(year: i32) -> Result<Self> {
        if !(1583..=9999).contains(&year) {
            return Err(Error::YearOutOfRange(year));
        }
        let mut month_boundaries = [0u32; 13];
        for m in 1..=12 {
            month_boundaries[m as usize] =
                month_boundaries[m as usize - 1] + days_in_month(year, m) * HOURS_PER_DAY;
        }
        // Gauss: weekday of Jan 1, 0 = Sunday.
        let y = year - 1;
        let g = (1 + 5 * (y % 4) + 4 * (y % 100) + 6 * (y % 400)) % 7;
        let weekday_of_jan1 = if g == 0 {
            Weekday::Sunday
        } else {
            Weekday::from_number(g as u32).unwrap()
        };
        Ok(Self {
            year,
            hours_in_year: month_boundaries[12],
            month_boundaries,
            weekday_of_jan1,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn hours_in_year(&self) -> u32 {
        self.hours_in_year
    }

    pub fn days_in_year(&self) -> u32 {
        self.hours_in_year / HOURS_PER_DAY
    }

    /// Cumulative hour offsets of month starts; `[0]` is 0 and `[12]` is the year length.
    pub fn month_boundaries(&self) -> &[u32; 13] {
        &self.month_boundaries
    }

    pub fn weekday_of_jan1(&self) -> Weekday {
        self.weekday_of_jan1
    }

    /// Hours `[start, end)` of month `month` (1-based).
    pub fn month_span(&self, month: usize) -> (u32, u32) {
        (self.month_boundaries[month - 1], self.month_boundaries[month])
    }

    pub fn hours_in_month(&self, month: usize) -> u32 {
        let (a, b) = self.month_span(month);
        b - a
    }

    fn check_time(&self, t: f64, allow_end: bool) -> Result<()> {
        let h = f64::from(self.hours_in_year);
        let ok = t >= 0.0 && (t < h || (allow_end && t == h));
        if ok {
            Ok(())
        } else {
            Err(Error::TimeOutOfRange {
                t,
                hours_in_year: self.hours_in_year,
            })
        }
    }

    /// Month (1-based) containing `t`; the year end belongs to December.
    fn month_of(&self, t: f64) -> usize {
        self.month_boundaries[1..12]
            .iter()
            .take_while(|&&b| f64::from(b) <= t)
            .count()
            + 1
    }
}

/// Position on the month-coordinate axis together with `dτ/dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonthCoordinate<T> {
    pub tau: T,
    /// `dτ/dt` in 1/hours; constant within a month.
    pub jacobian: T,
}

/// Maps `t` hours since Jan 1 onto the month-coordinate axis.
pub fn month_coordinate<T: Scalar>(ctx: &YearContext, t: T) -> Result<MonthCoordinate<T>> {
    ctx.check_time(to_f64(t), true)?;
    let month = ctx.month_of(to_f64(t));
    let (start, end) = ctx.month_span(month);
    let len: T = lit(f64::from(end - start));
    let offset = t - lit(f64::from(start));
    Ok(MonthCoordinate {
        tau: lit::<T>(month as f64 - 0.5) + offset / len,
        jacobian: len.recip(),
    })
}

/// Inverse of [`month_coordinate`]: hours since Jan 1 for `tau` in `[0.5, 12.5]`.
pub fn hours_at_month_coordinate<T: Scalar>(ctx: &YearContext, tau: T) -> Result<T> {
    let tau_f = to_f64(tau);
    if !(0.5..=12.5).contains(&tau_f) {
        return Err(Error::TimeOutOfRange {
            t: tau_f,
            hours_in_year: ctx.hours_in_year,
        });
    }
    let month = ((tau_f + 0.5).floor() as usize).clamp(1, 12);
    let (start, end) = ctx.month_span(month);
    let frac = tau - lit(month as f64 - 0.5);
    Ok(lit::<T>(f64::from(start)) + frac * lit(f64::from(end - start)))
}

/// ISO weekday of the civil day containing `t`.
pub fn weekday_of<T: Scalar>(ctx: &YearContext, t: T) -> Result<Weekday> {
    let t = to_f64(t);
    ctx.check_time(t, false)?;
    let day = (t / f64::from(HOURS_PER_DAY)).floor() as u32;
    Ok(ctx.weekday_of_jan1.add_days(day))
}

/// Season start dates and the derived season midpoints for one year.
///
/// A midpoint `μ_s` is the noon of the civil day containing the temporal
/// middle of season `s`. For seasons with an odd number of days that is the
/// exact temporal middle; for even lengths it lies 12 h later. Anchoring at
/// noon matches the once-per-day sampling of the morph fraction, so the day
/// holding `μ_s` reproduces the pure seasonal profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct SeasonCalendar {
    year: i32,
    hours_in_year: u32,
    season_starts: [MonthDay; 4],
    start_hours: [u32; 4],
    season_midpoints: [f64; 4],
}

/// Result of [`season_position`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeasonPosition<T> {
    pub s_lo: Season,
    pub s_hi: Season,
    /// Linear ramp, 0 at `μ_{s_lo}` and 1 at `μ_{s_hi}`.
    pub p: T,
}

impl SeasonCalendar {
    pub const METEOROLOGICAL: [MonthDay; 4] = [
        MonthDay { month: 12, day: 1 },
        MonthDay { month: 3, day: 1 },
        MonthDay { month: 6, day: 1 },
        MonthDay { month: 9, day: 1 },
    ];

    pub fn meteorological(ctx: &YearContext) -> Self {
        Self::new(ctx, Self::METEOROLOGICAL).expect("meteorological calendar is valid")
    }

    /// `starts[s]` is the first day of season `s + 1` (winter, spring, summer, autumn).
    pub fn new(ctx: &YearContext, starts: [MonthDay; 4]) -> Result<Self> {
        let h = ctx.hours_in_year;
        let mut start_hours = [0u32; 4];
        for (slot, md) in start_hours.iter_mut().zip(starts) {
            *slot = md.day_of_year(ctx)? * HOURS_PER_DAY;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if start_hours[i] == start_hours[j] {
                    return Err(Error::SeasonCalendar(format!(
                        "{} and {} start on the same day",
                        Season::ALL[i],
                        Season::ALL[j]
                    )));
                }
            }
        }
        let descents = (0..4)
            .filter(|&i| start_hours[(i + 1) % 4] < start_hours[i])
            .count();
        if descents != 1 {
            return Err(Error::SeasonCalendar(
                "season starts must follow winter, spring, summer, autumn in cyclic order".into(),
            ));
        }

        let mut season_midpoints = [0.0; 4];
        for i in 0..4 {
            let len = (start_hours[(i + 1) % 4] + h - start_hours[i]) % h;
            let days = len / HOURS_PER_DAY;
            let middle_day = days / 2;
            let mid = (start_hours[i] + middle_day * HOURS_PER_DAY + HOURS_PER_DAY / 2) % h;
            season_midpoints[i] = f64::from(mid);
        }
        for i in 0..4 {
            if season_midpoints[i] == season_midpoints[(i + 1) % 4] {
                return Err(Error::SeasonCalendar(format!(
                    "{} and {} share a midpoint",
                    Season::ALL[i],
                    Season::ALL[(i + 1) % 4]
                )));
            }
        }

        Ok(Self {
            year: ctx.year,
            hours_in_year: h,
            season_starts: starts,
            start_hours,
            season_midpoints,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn season_starts(&self) -> &[MonthDay; 4] {
        &self.season_starts
    }

    /// Hour offset of each season's first day.
    pub fn start_hours(&self) -> &[u32; 4] {
        &self.start_hours
    }

    /// Midpoints `μ_s` in hours since Jan 1, indexed by season.
    pub fn season_midpoints(&self) -> &[f64; 4] {
        &self.season_midpoints
    }

    pub fn midpoint(&self, season: Season) -> f64 {
        self.season_midpoints[season.index()]
    }

    /// Cyclic distance in hours from `μ_s` forward to `μ_{s+1}`.
    pub fn midpoint_gap(&self, season: Season) -> f64 {
        let h = f64::from(self.hours_in_year);
        (self.midpoint(season.next()) - self.midpoint(season)).rem_euclid(h)
    }

    fn check_context(&self, ctx: &YearContext) -> Result<()> {
        if ctx.year != self.year {
            return Err(Error::CalendarYearMismatch {
                calendar: self.year,
                context: ctx.year,
            });
        }
        Ok(())
    }
}

fn cyclic_offset<T: Scalar>(t: T, origin: f64, period: T) -> T {
    let x = t - lit(origin);
    x - period * (x / period).floor()
}

/// Adjacent seasons around `t` and the morph ramp between their midpoints.
///
/// `s_lo` is the season whose midpoint is the nearest at or before `t`,
/// cyclically across New Year; `s_hi` is its successor.
pub fn season_position<T: Scalar>(
    cal: &SeasonCalendar,
    ctx: &YearContext,
    t: T,
) -> Result<SeasonPosition<T>> {
    cal.check_context(ctx)?;
    ctx.check_time(to_f64(t), true)?;
    let period: T = lit(f64::from(ctx.hours_in_year));
    let (s_lo, delta) = Season::ALL
        .iter()
        .map(|&s| (s, cyclic_offset(t, cal.midpoint(s), period)))
        .fold(None::<(Season, T)>, |best, cur| match best {
            Some(b) if b.1 <= cur.1 => Some(b),
            _ => Some(cur),
        })
        .expect("four seasons");
    let gap = cal.midpoint_gap(s_lo);
    if gap <= 0.0 {
        return Err(Error::SeasonCalendar(format!(
            "{} and {} share a midpoint",
            s_lo,
            s_lo.next()
        )));
    }
    let p = (delta / lit(gap)).min(T::one());
    Ok(SeasonPosition {
        s_lo,
        s_hi: s_lo.next(),
        p,
    })
}

/// Season whose start date is the nearest at or before `t` (season membership
/// by start dates, without morphing).
pub fn season_of<T: Scalar>(cal: &SeasonCalendar, ctx: &YearContext, t: T) -> Result<Season> {
    cal.check_context(ctx)?;
    ctx.check_time(to_f64(t), true)?;
    let period: T = lit(f64::from(ctx.hours_in_year));
    let best = Season::ALL
        .iter()
        .map(|&s| (s, cyclic_offset(t, f64::from(cal.start_hours[s.index()]), period)))
        .fold(None::<(Season, T)>, |best, cur| match best {
            Some(b) if b.1 <= cur.1 => Some(b),
            _ => Some(cur),
        })
        .expect("four seasons");
    Ok(best.0)
}
