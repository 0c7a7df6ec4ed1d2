use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure class, used for process exit codes and machine-readable error codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    InputData,
    Degenerate,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Config => 2,
            ErrorKind::InputData => 3,
            ErrorKind::Degenerate => 4,
            ErrorKind::Io => 5,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            ErrorKind::Config => "config_error",
            ErrorKind::InputData => "input_data_error",
            ErrorKind::Degenerate => "numeric_degeneracy",
            ErrorKind::Io => "io_error",
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("year {0} outside supported range 1583..=9999")]
    YearOutOfRange(i32),

    #[error("time {t} h outside the year [0, {hours_in_year}]")]
    TimeOutOfRange { t: f64, hours_in_year: u32 },

    #[error("invalid date {month:02}-{day:02}: {reason}")]
    InvalidDate { month: u32, day: u32, reason: String },

    #[error("invalid season calendar: {0}")]
    SeasonCalendar(String),

    #[error("season calendar built for {calendar} used with year {context}")]
    CalendarYearMismatch { calendar: i32, context: i32 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("expected 12 monthly integrals, got {0}")]
    MonthCount(usize),

    #[error("reversed integration bounds [{a}, {b}]")]
    ReversedBounds { a: f64, b: f64 },

    #[error("invalid grid step {0} h: must divide 24 h into a whole number of steps")]
    GridStep(f64),

    #[error("invalid day profile: {0}")]
    Profile(String),

    #[error("invalid profile library: {0}")]
    Library(String),

    #[error("morph fraction {0} outside [0, 1]")]
    MorphFraction(f64),

    #[error("window half-width {0} h must be positive")]
    NonPositiveWindow(f64),

    #[error("window half-width {window} h is not a multiple of the grid step {dt} h")]
    WindowNotMultiple { window: f64, dt: f64 },

    #[error("non-positive raw-profile integral {integral} over window centred at index {index} (t = {t_hours} h)")]
    DegenerateWindow {
        index: usize,
        t_hours: f64,
        integral: f64,
    },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("{0}")]
    Config(String),

    #[error("{path}:{line}: {msg}")]
    Input {
        path: PathBuf,
        line: u64,
        msg: String,
    },

    #[error("{path}: {msg}")]
    InputFile { path: PathBuf, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::YearOutOfRange(_)
            | Error::InvalidDate { .. }
            | Error::SeasonCalendar(_)
            | Error::CalendarYearMismatch { .. }
            | Error::GridStep(_)
            | Error::Library(_)
            | Error::NonPositiveWindow(_)
            | Error::WindowNotMultiple { .. }
            | Error::Config(_) => ErrorKind::Config,
            Error::TimeOutOfRange { .. }
            | Error::NonFinite(_)
            | Error::MonthCount(_)
            | Error::ReversedBounds { .. }
            | Error::Profile(_)
            | Error::MorphFraction(_)
            | Error::GridMismatch(_)
            | Error::Input { .. }
            | Error::InputFile { .. } => ErrorKind::InputData,
            Error::DegenerateWindow { .. } => ErrorKind::Degenerate,
            Error::Io { .. } => ErrorKind::Io,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_kind() {
        let cases = [
            (Error::Config("x".into()), 2, "config_error"),
            (Error::GridStep(0.3), 2, "config_error"),
            (
                Error::InputFile {
                    path: "m.csv".into(),
                    msg: "missing month 7".into(),
                },
                3,
                "input_data_error",
            ),
            (
                Error::DegenerateWindow {
                    index: 1168,
                    t_hours: 292.0,
                    integral: 0.0,
                },
                4,
                "numeric_degeneracy",
            ),
            (
                Error::io("out.csv", std::io::Error::from(std::io::ErrorKind::NotFound)),
                5,
                "io_error",
            ),
        ];
        for (err, code, name) in cases {
            assert_eq!(err.kind().exit_code(), code, "{err}");
            assert_eq!(err.kind().code(), name);
        }
    }
}
