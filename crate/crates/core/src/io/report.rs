use std::fmt::Write as _;

use crate::composition::{AlphaStats, IntervalCheck};
use crate::io::csv_files::format_sig10;

/// Largest accepted relative error of `∫R` against a calendar month total.
pub const MONTHLY_TOLERANCE: f64 = 0.02;
/// Largest accepted relative error of `∫R` against the yearly total.
pub const YEARLY_TOLERANCE: f64 = 0.005;

const MONTH_NAMES: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

/// Integral checks and diagnostics of one run. Rendering is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Resolved configuration in config-file syntax.
    pub config_echo: String,
    pub units: String,
    pub monthly: Vec<IntervalCheck<f64>>,
    pub yearly: IntervalCheck<f64>,
    /// Absent when checking an existing series.
    pub alpha: Option<AlphaStats>,
    /// Month-coordinate intervals where the interpolant is negative.
    pub negative_intervals: Vec<(f64, f64)>,
    pub negative_months: Vec<usize>,
}

impl VerificationReport {
    pub fn monthly_passed(&self) -> bool {
        self.monthly
            .iter()
            .all(|c| c.relative_error < MONTHLY_TOLERANCE)
    }

    pub fn yearly_passed(&self) -> bool {
        self.yearly.relative_error < YEARLY_TOLERANCE
    }

    pub fn passed(&self) -> bool {
        self.monthly_passed() && self.yearly_passed()
    }

    pub fn max_monthly_error(&self) -> f64 {
        self.monthly
            .iter()
            .map(|c| c.relative_error)
            .fold(0.0, f64::max)
    }

    pub fn render(&self) -> String {
        let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut s = String::new();
        let _ = writeln!(s, "# loadsynth verification report");
        let _ = writeln!(s);
        let _ = writeln!(s, "[config]");
        s.push_str(&self.config_echo);
        let _ = writeln!(s);

        let _ = writeln!(s, "[monthly] units = {}", self.units);
        let _ = writeln!(s, "month,start_h,end_h,expected,achieved,relative_error,status");
        for (i, c) in self.monthly.iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                MONTH_NAMES.get(i).copied().unwrap_or("?"),
                c.start_h,
                c.end_h,
                format_sig10(c.expected),
                format_sig10(c.actual),
                format_sig10(c.relative_error),
                status(c.relative_error < MONTHLY_TOLERANCE),
            );
        }
        let _ = writeln!(s);

        let y = &self.yearly;
        let _ = writeln!(s, "[yearly]");
        let _ = writeln!(s, "expected = {}", format_sig10(y.expected));
        let _ = writeln!(s, "achieved = {}", format_sig10(y.actual));
        let _ = writeln!(s, "relative_error = {}", format_sig10(y.relative_error));
        let _ = writeln!(s, "status = {}", status(self.yearly_passed()));
        let _ = writeln!(s);

        if let Some(a) = &self.alpha {
            let _ = writeln!(s, "[alpha]");
            let _ = writeln!(s, "min = {}", format_sig10(a.min));
            let _ = writeln!(s, "max = {}", format_sig10(a.max));
            let _ = writeln!(s, "max_step_ratio = {}", format_sig10(a.max_step_ratio));
            let _ = writeln!(s, "max_abs_step = {}", format_sig10(a.max_abs_step));
            let _ = writeln!(s);
        }

        let _ = writeln!(s, "[diagnostics]");
        if self.negative_months.is_empty() {
            let _ = writeln!(s, "negative_months = none");
        } else {
            let list: Vec<String> = self.negative_months.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(s, "negative_months = {}", list.join(", "));
        }
        if self.negative_intervals.is_empty() {
            let _ = writeln!(s, "negative_interpolant = none");
        } else {
            let list: Vec<String> = self
                .negative_intervals
                .iter()
                .map(|(a, b)| format!("[{a:.6}, {b:.6}]"))
                .collect();
            let _ = writeln!(s, "negative_interpolant = {}", list.join(" "));
        }
        let _ = writeln!(s);

        let _ = writeln!(s, "[summary]");
        let _ = writeln!(s, "monthly_tolerance = {MONTHLY_TOLERANCE}");
        let _ = writeln!(s, "yearly_tolerance = {YEARLY_TOLERANCE}");
        let _ = writeln!(s, "max_monthly_relative_error = {}", format_sig10(self.max_monthly_error()));
        let _ = writeln!(s, "result = {}", status(self.passed()));
        s
    }
}
