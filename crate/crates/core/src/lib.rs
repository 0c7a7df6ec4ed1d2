//! Synthesis of fine-resolution yearly load profiles from twelve monthly
//! totals and a small library of reference day profiles.
//!
//! The pipeline has three stages:
//!
//! 1. [`harmonic`] fits a 12-periodic, six-harmonic Fourier series whose
//!    integral over every month equals the given monthly total.
//! 2. [`morphing`] strings reference day profiles (per weekday and season)
//!    into a raw year series, blending adjacent seasons linearly between
//!    their midpoints.
//! 3. [`composition`] rescales the raw series by the ratio of one-week window
//!    integrals of the harmonic envelope and the raw series, so the result
//!    keeps the intraday shape while following the monthly totals.
//!
//! [`calendar`] supplies the real-calendar plumbing and [`io`] the file
//! formats, configuration and reports used by the `loadsynth` binary.
//!
//! Numeric types are generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! aliases below name the usual instantiations.

pub mod calendar;
pub mod composition;
pub mod error;
pub mod harmonic;
pub mod io;
pub mod morphing;
pub mod scalar;
pub mod series;

pub use calendar::{
    hours_at_month_coordinate, month_coordinate, season_of, season_position, weekday_of,
    MonthCoordinate, MonthDay, Season, SeasonCalendar, SeasonPosition, Weekday, YearContext,
};
pub use composition::{
    compute_alpha, cyclic_integral_y, integral_y, month_intervals, synthesize, synthesize_year,
    verify_intervals, window_integral_w, window_integral_y, y_rate, AlphaStats, IntervalCheck,
    ScalingSeries, Synthesis, SynthesizedSeries, DEFAULT_WINDOW_HOURS,
};
pub use error::{Error, ErrorKind, Result};
pub use harmonic::{fit_harmonics, month_integral_residuals, HarmonicSeries, MonthlyIntegrals};
pub use morphing::{build_raw_year, day_blend, morph_day, DayBlend, DayProfile, MorphMode, ProfileLibrary};
pub use scalar::Scalar;
pub use series::{GridStep, YearSeries};

pub type MonthlyIntegralsF64 = MonthlyIntegrals<f64>;
pub type HarmonicSeriesF64 = HarmonicSeries<f64>;
pub type DayProfileF64 = DayProfile<f64>;
pub type ProfileLibraryF64 = ProfileLibrary<f64>;
pub type YearSeriesF64 = YearSeries<f64>;
pub type ScalingSeriesF64 = ScalingSeries<f64>;
pub type SynthesisF64 = Synthesis<f64>;

pub type MonthlyIntegralsF32 = MonthlyIntegrals<f32>;
pub type HarmonicSeriesF32 = HarmonicSeries<f32>;
pub type DayProfileF32 = DayProfile<f32>;
pub type ProfileLibraryF32 = ProfileLibrary<f32>;
pub type YearSeriesF32 = YearSeries<f32>;
