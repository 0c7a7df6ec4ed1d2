//! File formats, run configuration, reports and the end-to-end pipeline
//! behind the `loadsynth` command-line tool.

mod config;
mod csv_files;
mod pipeline;
mod report;

pub use config::{parse_hours, RunConfig, ALLOWED_STEPS_PER_HOUR};
pub use csv_files::{
    format_sig10, format_time, load_monthly_csv, load_profile_csv, read_series_csv,
    write_plot_data, write_series_csv,
};
pub use pipeline::{load_library, run_pipeline, verify_series, PipelineOutput};
pub use report::{VerificationReport, MONTHLY_TOLERANCE, YEARLY_TOLERANCE};
