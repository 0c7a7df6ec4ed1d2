//! Flat `key = value` run configuration.
//!
//! ```text
//! # comments start with '#'
//! year = 2023
//! dt = 0.25                      # hours; 1, 0.5, 0.25, 1/6 or 1/12
//! window = 168                   # window half-width W in hours
//! season_starts = 12-01, 03-01, 06-01, 09-01
//! morphing = on                  # on | off
//! units = kWh
//! months = months.csv            # relative paths resolve against the config file
//! profiles = .                   # directory holding the profile files
//! out = series.csv
//! report = report.txt
//! plot_data = plot.csv
//! profile.winter.weekdays = winter_weekday.csv
//! profile.winter.weekend = winter_weekend.csv
//! ...
//! ```
//!
//! Profile keys are `profile.<season>.<days>` with `<season>` one of
//! `winter`, `spring`, `summer`, `autumn` and `<days>` one of `mon` .. `sun`,
//! `weekdays` (mon-fri), `weekend` (sat, sun) or `all`. Every one of the 28
//! (weekday, season) slots must be assigned exactly once; several slots may
//! name the same file. Unknown or repeated keys are errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::calendar::{MonthDay, Season, SeasonCalendar, Weekday, YearContext};
use crate::composition::DEFAULT_WINDOW_HOURS;
use crate::error::{Error, Result};
use crate::morphing::MorphMode;
use crate::series::GridStep;

/// Permitted grid resolutions, as samples per hour.
pub const ALLOWED_STEPS_PER_HOUR: [u32; 5] = [1, 2, 4, 6, 12];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub year: i32,
    /// Grid step in hours.
    pub dt: f64,
    /// Window half-width `W` in hours.
    pub window: f64,
    pub season_starts: [MonthDay; 4],
    /// Profile file per slot, `profile_map[weekday.index()][season.index()]`,
    /// relative to `profiles_dir`.
    pub profile_map: [[String; 4]; 7],
    pub morphing: MorphMode,
    pub months: Option<PathBuf>,
    pub profiles_dir: PathBuf,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
    pub units: String,
}

/// Parses a duration in hours: a decimal number or a fraction `a/b`.
pub fn parse_hours(s: &str) -> Option<f64> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((a, b)) => a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?,
        None => s.parse::<f64>().ok()?,
    };
    v.is_finite().then_some(v)
}

fn parse_season(s: &str) -> Option<Season> {
    Season::ALL.into_iter().find(|x| x.name() == s)
}

fn parse_days(s: &str) -> Option<Vec<Weekday>> {
    match s {
        "all" => Some(Weekday::ALL.to_vec()),
        "weekdays" => Some(Weekday::ALL[..5].to_vec()),
        "weekend" => Some(Weekday::ALL[5..].to_vec()),
        _ => Weekday::ALL
            .into_iter()
            .find(|d| d.short_name() == s)
            .map(|d| vec![d]),
    }
}

fn resolve(base: &Path, value: &str) -> PathBuf {
    let p = Path::new(value);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

impl RunConfig {
    /// Reads and validates a config file; relative paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        Self::parse(&text, base).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut seen: Vec<String> = Vec::new();
        let mut year = None;
        let mut dt = None;
        let mut window = None;
        let mut season_starts = None;
        let mut morphing = None;
        let mut units = None;
        let mut months = None;
        let mut profiles_dir = None;
        let mut out = None;
        let mut report = None;
        let mut plot_data = None;
        let mut slots: [[Option<String>; 4]; 7] = Default::default();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Config(format!("line {line_no}: {msg}"));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(err(format!("empty value for `{key}`")));
            }
            if seen.iter().any(|k| k == key) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            seen.push(key.to_string());

            match key {
                "year" => {
                    year = Some(value.parse::<i32>().map_err(|_| err(format!("invalid year `{value}`")))?)
                }
                "dt" => dt = Some(parse_hours(value).ok_or_else(|| err(format!("invalid dt `{value}`")))?),
                "window" => {
                    window = Some(parse_hours(value).ok_or_else(|| err(format!("invalid window `{value}`")))?)
                }
                "season_starts" => {
                    let parts: Vec<&str> = value.split(',').collect();
                    if parts.len() != 4 {
                        return Err(err("season_starts needs four MM-DD dates".into()));
                    }
                    let mut starts = [SeasonCalendar::METEOROLOGICAL[0]; 4];
                    for (slot, part) in starts.iter_mut().zip(parts) {
                        *slot = part.parse().map_err(|e: Error| err(e.to_string()))?;
                    }
                    season_starts = Some(starts);
                }
                "morphing" => {
                    morphing = Some(match value {
                        "on" => MorphMode::Linear,
                        "off" => MorphMode::Off,
                        _ => return Err(err(format!("morphing must be `on` or `off`, got `{value}`"))),
                    })
                }
                "units" => units = Some(value.to_string()),
                "months" => months = Some(resolve(base, value)),
                "profiles" => profiles_dir = Some(resolve(base, value)),
                "out" => out = Some(resolve(base, value)),
                "report" => report = Some(resolve(base, value)),
                "plot_data" => plot_data = Some(resolve(base, value)),
                _ => {
                    let parts: Vec<&str> = key.split('.').collect();
                    let (season, days) = match parts.as_slice() {
                        ["profile", s, d] => (
                            parse_season(s).ok_or_else(|| err(format!("unknown season `{s}`")))?,
                            parse_days(d).ok_or_else(|| err(format!("unknown day selector `{d}`")))?,
                        ),
                        _ => return Err(err(format!("unknown key `{key}`"))),
                    };
                    for d in days {
                        let slot = &mut slots[d.index()][season.index()];
                        if slot.is_some() {
                            return Err(err(format!("slot ({d}, {season}) assigned twice")));
                        }
                        *slot = Some(value.to_string());
                    }
                }
            }
        }

        let missing = |k: &str| Error::Config(format!("missing required key `{k}`"));
        let mut profile_map: [[String; 4]; 7] = Default::default();
        for d in Weekday::ALL {
            for s in Season::ALL {
                profile_map[d.index()][s.index()] = slots[d.index()][s.index()]
                    .take()
                    .ok_or_else(|| Error::Config(format!("no profile assigned to ({d}, {s})")))?;
            }
        }

        let cfg = Self {
            year: year.ok_or_else(|| missing("year"))?,
            dt: dt.ok_or_else(|| missing("dt"))?,
            window: window.unwrap_or(DEFAULT_WINDOW_HOURS),
            season_starts: season_starts.unwrap_or(SeasonCalendar::METEOROLOGICAL),
            profile_map,
            morphing: morphing.unwrap_or_default(),
            months,
            profiles_dir: profiles_dir.unwrap_or_else(|| base.to_path_buf()),
            out,
            report,
            plot_data,
            units: units.unwrap_or_else(|| "kWh".to_string()),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks year, resolution, window and season calendar.
    pub fn validate(&self) -> Result<()> {
        let ctx = YearContext::new(self.year)?;
        self.step()?;
        if !(self.window > 0.0) {
            return Err(Error::NonPositiveWindow(self.window));
        }
        if self.step()?.steps_in(self.window).is_none() {
            return Err(Error::WindowNotMultiple {
                window: self.window,
                dt: self.dt,
            });
        }
        SeasonCalendar::new(&ctx, self.season_starts)?;
        Ok(())
    }

    /// Grid step; only the resolutions in [`ALLOWED_STEPS_PER_HOUR`] are accepted.
    pub fn step(&self) -> Result<GridStep> {
        let per_hour = ALLOWED_STEPS_PER_HOUR
            .into_iter()
            .find(|&n| (self.dt * f64::from(n) - 1.0).abs() < 1e-9)
            .ok_or_else(|| {
                Error::Config(format!(
                    "dt = {} h not supported; use 1, 0.5, 0.25, 1/6 or 1/12",
                    self.dt
                ))
            })?;
        GridStep::from_steps_per_day(24 * per_hour)
    }

    pub fn year_context(&self) -> Result<YearContext> {
        YearContext::new(self.year)
    }

    pub fn season_calendar(&self, ctx: &YearContext) -> Result<SeasonCalendar> {
        SeasonCalendar::new(ctx, self.season_starts)
    }

    pub fn profile_path(&self, weekday: Weekday, season: Season) -> PathBuf {
        self.profiles_dir
            .join(&self.profile_map[weekday.index()][season.index()])
    }

    /// The fully resolved configuration in config-file syntax, every key explicit.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let dt = match self.step().map(|g| g.steps_per_day() / 24) {
            Ok(n @ (6 | 12)) => format!("1/{n}"),
            _ => format!("{}", self.dt),
        };
        let starts: Vec<String> = self.season_starts.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "year = {}", self.year);
        let _ = writeln!(s, "dt = {dt}");
        let _ = writeln!(s, "window = {}", self.window);
        let _ = writeln!(s, "season_starts = {}", starts.join(", "));
        let morph = match self.morphing {
            MorphMode::Linear => "on",
            MorphMode::Off => "off",
        };
        let _ = writeln!(s, "morphing = {morph}");
        let _ = writeln!(s, "units = {}", self.units);
        let paths = [
            ("months", self.months.as_ref()),
            ("profiles", Some(&self.profiles_dir)),
            ("out", self.out.as_ref()),
            ("report", self.report.as_ref()),
            ("plot_data", self.plot_data.as_ref()),
        ];
        for (key, path) in paths {
            if let Some(p) = path {
                let _ = writeln!(s, "{key} = {}", p.display());
            }
        }
        for season in Season::ALL {
            for d in Weekday::ALL {
                let _ = writeln!(
                    s,
                    "profile.{season}.{d} = {}",
                    self.profile_map[d.index()][season.index()]
                );
            }
        }
        s
    }
}
