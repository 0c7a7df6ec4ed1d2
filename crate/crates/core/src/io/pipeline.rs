use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::calendar::{Season, Weekday};
use crate::composition::{
    month_intervals, synthesize_year, verify_intervals, AlphaStats, IntervalCheck, Synthesis,
};
use crate::error::{Error, Result};
use crate::harmonic::{fit_harmonics, HarmonicSeries, MonthlyIntegrals};
use crate::io::config::RunConfig;
use crate::io::csv_files::{
    load_monthly_csv, load_profile_csv, read_series_csv, write_plot_data, write_series_csv,
};
use crate::io::report::VerificationReport;
use crate::morphing::ProfileLibrary;

pub struct PipelineOutput {
    pub synthesis: Synthesis<f64>,
    pub report: VerificationReport,
}

/// Loads every distinct profile file once; slots naming the same file share it.
pub fn load_library(cfg: &RunConfig) -> Result<ProfileLibrary<f64>> {
    let step = cfg.step()?;
    let mut index: BTreeMap<PathBuf, usize> = BTreeMap::new();
    let mut profiles = Vec::new();
    let mut slots = [[0usize; 4]; 7];
    for d in Weekday::ALL {
        for s in Season::ALL {
            let path = cfg.profile_path(d, s);
            let idx = match index.get(&path) {
                Some(&i) => i,
                None => {
                    profiles.push(load_profile_csv(&path, step)?);
                    index.insert(path, profiles.len() - 1);
                    profiles.len() - 1
                }
            };
            slots[d.index()][s.index()] = idx;
        }
    }
    ProfileLibrary::new(profiles, slots)
}

fn months_path(cfg: &RunConfig) -> Result<&Path> {
    cfg.months
        .as_deref()
        .ok_or_else(|| Error::Config("no monthly integrals file given (`months`)".into()))
}

fn build_report(
    cfg: &RunConfig,
    months: &MonthlyIntegrals<f64>,
    harmonics: &HarmonicSeries<f64>,
    monthly: Vec<IntervalCheck<f64>>,
    yearly: IntervalCheck<f64>,
    alpha: Option<AlphaStats>,
) -> VerificationReport {
    VerificationReport {
        config_echo: cfg.to_config_text(),
        units: cfg.units.clone(),
        monthly,
        yearly,
        alpha,
        negative_intervals: harmonics.negative_intervals(),
        negative_months: months.negative_months(),
    }
}

/// Runs the whole synthesis for `cfg` and writes every output path it names.
pub fn run_pipeline(cfg: &RunConfig) -> Result<PipelineOutput> {
    cfg.validate()?;
    let ctx = cfg.year_context()?;
    let cal = cfg.season_calendar(&ctx)?;
    let months = load_monthly_csv(months_path(cfg)?)?;
    let lib = load_library(cfg)?;
    let synthesis = synthesize_year(&months, &lib, &cal, &ctx, cfg.morphing, cfg.window)?;

    let report = build_report(
        cfg,
        &months,
        &synthesis.harmonics,
        synthesis.monthly.clone(),
        synthesis.yearly,
        Some(synthesis.alpha.stats()),
    );

    if let Some(path) = &cfg.out {
        write_series_csv(&synthesis.series, path)?;
    }
    if let Some(path) = &cfg.plot_data {
        write_plot_data(
            path,
            &ctx,
            &synthesis.harmonics,
            &synthesis.series,
            &synthesis.raw,
            synthesis.alpha.values(),
        )?;
    }
    if let Some(path) = &cfg.report {
        std::fs::write(path, report.render()).map_err(|e| Error::io(path, e))?;
    }
    Ok(PipelineOutput { synthesis, report })
}

/// Re-checks monthly and yearly integrals of an existing series file.
pub fn verify_series(cfg: &RunConfig, series_path: &Path) -> Result<VerificationReport> {
    cfg.validate()?;
    let ctx = cfg.year_context()?;
    let months = load_monthly_csv(months_path(cfg)?)?;
    let series = read_series_csv(series_path, &ctx, cfg.step()?)?;
    let harmonics = fit_harmonics(&months);
    let mut intervals = month_intervals(&ctx);
    intervals.push((0.0, f64::from(ctx.hours_in_year())));
    let mut checks = verify_intervals(&series, &harmonics, &ctx, &intervals)?;
    let yearly = checks.pop().expect("yearly interval");
    Ok(build_report(cfg, &months, &harmonics, checks, yearly, None))
}
