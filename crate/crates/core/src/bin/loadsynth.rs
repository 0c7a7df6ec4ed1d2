use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use loadsynth::io::{parse_hours, run_pipeline, verify_series, RunConfig};
use loadsynth::{Error, MorphMode};

#[derive(Parser)]
#[command(name = "loadsynth", version, about = "Synthesize a yearly load profile from monthly totals and type-day profiles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the synthesis and write the series, report and plot data.
    Synth(SynthArgs),
    /// Re-check monthly and yearly integrals of an existing series file.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    months: Option<PathBuf>,
    /// Directory holding the profile files named in the config.
    #[arg(long)]
    profiles: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long = "plot-data")]
    plot_data: Option<PathBuf>,
    /// Switch seasons abruptly at their start dates instead of morphing.
    #[arg(long = "no-morph")]
    no_morph: bool,
    #[arg(long)]
    year: Option<i32>,
    /// Grid step in hours (1, 0.5, 0.25, 1/6, 1/12).
    #[arg(long)]
    dt: Option<String>,
    /// Window half-width in hours.
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    series: PathBuf,
    #[arg(long)]
    months: PathBuf,
    #[arg(long)]
    config: PathBuf,
}

fn hours_flag(name: &str, value: &str) -> Result<f64, Error> {
    parse_hours(value).ok_or_else(|| Error::Config(format!("invalid --{name} `{value}`")))
}

fn synth(args: SynthArgs) -> Result<bool, Error> {
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(v) = args.months {
        cfg.months = Some(v);
    }
    if let Some(v) = args.profiles {
        cfg.profiles_dir = v;
    }
    if let Some(v) = args.out {
        cfg.out = Some(v);
    }
    if let Some(v) = args.report {
        cfg.report = Some(v);
    }
    if let Some(v) = args.plot_data {
        cfg.plot_data = Some(v);
    }
    if args.no_morph {
        cfg.morphing = MorphMode::Off;
    }
    if let Some(v) = args.year {
        cfg.year = v;
    }
    if let Some(v) = args.dt {
        cfg.dt = hours_flag("dt", &v)?;
    }
    if let Some(v) = args.window {
        cfg.window = hours_flag("window", &v)?;
    }
    if cfg.out.is_none() {
        return Err(Error::Config("no output path given (`out` or --out)".into()));
    }

    let output = run_pipeline(&cfg)?;
    let report = &output.report;
    for m in &report.negative_months {
        eprintln!("warning: month {m} has a negative total");
    }
    if !report.negative_intervals.is_empty() {
        eprintln!(
            "warning: interpolant is negative on {} interval(s); see report",
            report.negative_intervals.len()
        );
    }
    println!(
        "synthesized {} points; max monthly error {:.3e}, yearly error {:.3e}: {}",
        output.synthesis.series.len(),
        report.max_monthly_error(),
        report.yearly.relative_error,
        if report.passed() { "PASS" } else { "FAIL" }
    );
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool, Error> {
    let mut cfg = RunConfig::load(&args.config)?;
    cfg.months = Some(args.months);
    let report = verify_series(&cfg, &args.series)?;
    print!("{}", report.render());
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(a) => synth(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let kind = e.kind();
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", kind.code());
            ExitCode::from(kind.exit_code() as u8)
        }
    }
}
