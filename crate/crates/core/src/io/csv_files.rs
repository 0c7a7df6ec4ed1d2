use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::calendar::YearContext;
use crate::composition::y_rate;
use crate::error::{Error, Result};
use crate::harmonic::{HarmonicSeries, MonthlyIntegrals, MONTHS};
use crate::morphing::DayProfile;
use crate::series::{GridStep, YearSeries};

const TIME_TOLERANCE: f64 = 1e-9;

/// Formats `v` with 10 significant digits, e.g. `1.000000000`, `1234.567891`.
/// Magnitudes outside `[1e-5, 1e10)` use scientific notation.
pub fn format_sig10(v: f64) -> String {
    if v == 0.0 {
        return "0.000000000".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.9e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if !(-5..10).contains(&exp) {
        return sci;
    }
    let decimals = (9 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Grid time in hours: up to 10 significant digits without trailing zeros.
pub fn format_time(t: f64) -> String {
    let s = format_sig10(t);
    if s.contains('e') || !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(file))
}

fn input_error(path: &Path, line: u64, msg: impl Into<String>) -> Error {
    Error::Input {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Reads rows after checking the two-column header; yields `(line, first, second)`.
fn read_pairs(path: &Path, header: [&str; 2]) -> Result<Vec<(u64, String, String)>> {
    let mut rdr = reader(path)?;
    let mut rows = Vec::new();
    let mut saw_header = false;
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            input_error(path, line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if record.len() != 2 {
            return Err(input_error(
                path,
                line,
                format!("expected 2 columns, found {}", record.len()),
            ));
        }
        if !saw_header {
            if record.get(0) != Some(header[0]) || record.get(1) != Some(header[1]) {
                return Err(input_error(
                    path,
                    line,
                    format!("expected header `{},{}`", header[0], header[1]),
                ));
            }
            saw_header = true;
            continue;
        }
        rows.push((line, record[0].to_string(), record[1].to_string()));
    }
    if !saw_header {
        return Err(Error::InputFile {
            path: path.to_path_buf(),
            msg: "empty file".into(),
        });
    }
    Ok(rows)
}

fn parse_value(path: &Path, line: u64, s: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| input_error(path, line, format!("non-numeric value `{s}`")))?;
    if !v.is_finite() {
        return Err(input_error(path, line, format!("non-finite value `{s}`")));
    }
    Ok(v)
}

/// Loads `month,value` rows, one per month 1..12 in any order.
///
/// Negative totals load fine; check [`MonthlyIntegrals::negative_months`].
pub fn load_monthly_csv(path: &Path) -> Result<MonthlyIntegrals<f64>> {
    let rows = read_pairs(path, ["month", "value"])?;
    let mut values: [Option<f64>; MONTHS] = [None; MONTHS];
    for (count, (line, m, v)) in rows.iter().enumerate() {
        if count >= MONTHS {
            return Err(input_error(path, *line, "more than 12 data rows"));
        }
        let month: usize = m
            .parse()
            .ok()
            .filter(|m| (1..=MONTHS).contains(m))
            .ok_or_else(|| input_error(path, *line, format!("invalid month index `{m}`")))?;
        if values[month - 1].is_some() {
            return Err(input_error(path, *line, format!("duplicate month {month}")));
        }
        values[month - 1] = Some(parse_value(path, *line, v)?);
    }
    let mut out = [0.0; MONTHS];
    for (i, v) in values.iter().enumerate() {
        out[i] = v.ok_or_else(|| Error::InputFile {
            path: path.to_path_buf(),
            msg: format!("missing month {}", i + 1),
        })?;
    }
    MonthlyIntegrals::new(out)
}

/// Loads a `time_h,value` day profile with exactly `24/dt` rows at `k·dt`.
pub fn load_profile_csv(path: &Path, step: GridStep) -> Result<DayProfile<f64>> {
    let rows = read_pairs(path, ["time_h", "value"])?;
    let expected = step.steps_per_day() as usize;
    if rows.len() != expected {
        let line = rows.last().map(|r| r.0).unwrap_or(1);
        return Err(input_error(
            path,
            line,
            format!(
                "{} data rows, expected {expected} for dt = {} h",
                rows.len(),
                step.hours()
            ),
        ));
    }
    let dt = step.hours();
    let mut samples = Vec::with_capacity(expected);
    for (k, (line, t, v)) in rows.iter().enumerate() {
        let t = parse_value(path, *line, t)?;
        if (t - k as f64 * dt).abs() > TIME_TOLERANCE {
            return Err(input_error(
                path,
                *line,
                format!("time {t} h out of sequence, expected {} h", format_time(k as f64 * dt)),
            ));
        }
        let v = parse_value(path, *line, v)?;
        if v < 0.0 {
            return Err(input_error(path, *line, format!("negative value {v}")));
        }
        samples.push(v);
    }
    DayProfile::new(step, samples).map_err(|e| Error::InputFile {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    Ok(BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?))
}

/// Writes `t_hours,value` with one row per grid point.
pub fn write_series_csv(series: &YearSeries<f64>, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(w, "t_hours,value").map_err(io)?;
    for (i, &v) in series.values().iter().enumerate() {
        writeln!(w, "{},{}", format_time(series.time_at(i)), format_sig10(v)).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Reads a file written by [`write_series_csv`] back onto the grid of `ctx` and `step`.
pub fn read_series_csv(path: &Path, ctx: &YearContext, step: GridStep) -> Result<YearSeries<f64>> {
    let rows = read_pairs(path, ["t_hours", "value"])?;
    let expected = step.points_in_year(ctx);
    if rows.len() != expected {
        let line = rows.last().map(|r| r.0).unwrap_or(1);
        return Err(input_error(
            path,
            line,
            format!("{} data rows, expected {expected}", rows.len()),
        ));
    }
    let dt = step.hours();
    let mut values = Vec::with_capacity(expected);
    for (k, (line, t, v)) in rows.iter().enumerate() {
        let t = parse_value(path, *line, t)?;
        let grid_t = k as f64 * dt;
        if (t - grid_t).abs() > 1e-6 * grid_t.max(1.0) {
            return Err(input_error(path, *line, format!("time {t} h off the grid")));
        }
        values.push(parse_value(path, *line, v)?);
    }
    YearSeries::new(ctx, step, values)
}

/// Plot-ready CSV with columns `t_hours,week,R,y_rate,w,alpha`.
///
/// `week` numbers consecutive 168 h blocks from Jan 1 (1-based), so one week
/// is a contiguous block of rows. `y_rate` is sampled at each grid time.
pub fn write_plot_data(
    path: &Path,
    ctx: &YearContext,
    harmonics: &HarmonicSeries<f64>,
    r: &YearSeries<f64>,
    w: &YearSeries<f64>,
    alpha: &[f64],
) -> Result<()> {
    if !r.same_grid(w) || alpha.len() != r.len() {
        return Err(Error::GridMismatch("plot columns differ in length".into()));
    }
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "t_hours,week,R,y_rate,w,alpha").map_err(io)?;
    for i in 0..r.len() {
        let t = r.time_at(i);
        let week = (t / 168.0).floor() as u32 + 1;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_time(t),
            week,
            format_sig10(r.values()[i]),
            format_sig10(y_rate(harmonics, ctx, t)?),
            format_sig10(w.values()[i]),
            format_sig10(alpha[i]),
        )
        .map_err(io)?;
    }
    out.flush().map_err(io)
}
