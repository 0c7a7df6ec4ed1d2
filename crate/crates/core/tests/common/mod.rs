#![allow(dead_code)]

use std::path::PathBuf;

use loadsynth::io::{load_library, load_monthly_csv, RunConfig};
use loadsynth::{MonthlyIntegralsF64, ProfileLibraryF64};

pub fn example_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/example")
}

pub fn example_config() -> RunConfig {
    let mut cfg = RunConfig::load(&example_dir().join("example.conf")).expect("example config");
    cfg.out = None;
    cfg.report = None;
    cfg.plot_data = None;
    cfg
}

pub fn example_inputs() -> (RunConfig, MonthlyIntegralsF64, ProfileLibraryF64) {
    let cfg = example_config();
    let months = load_monthly_csv(cfg.months.as_deref().unwrap()).expect("example months");
    let lib = load_library(&cfg).expect("example profiles");
    (cfg, months, lib)
}

/// Composite Simpson rule with `panels` (even) sub-intervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels % 2 == 0);
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for k in 1..panels {
        let x = a + k as f64 * h;
        s += if k % 2 == 1 { 4.0 * f(x) } else { 2.0 * f(x) };
    }
    s * h / 3.0
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Index of the first maximum.
pub fn argmax(x: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if *v > x[best] {
            best = i;
        }
    }
    best
}
