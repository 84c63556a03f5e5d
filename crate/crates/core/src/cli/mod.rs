//! Command-line front end: `classify`, `shadow`, `distortion`, `report`.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid config, 3 unbounded
//! distortion, 4 not hyperbolic (shadow), 5 I/O.

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{self, ClassifyError, HyperbolicClass};
use crate::norms::{self, SimpleFunction};
use crate::operator;
use crate::shadow::{self, ShadowError};
use crate::space::{DissipativeSystem, InvalidConfig};
use crate::young::YoungFunction;

pub use config::{OutputParams, RunConfig, ShadowParams};
pub use report::{CsvSet, Report, ShadowRun, ShadowSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_UNBOUNDED_DISTORTION: i32 = 3;
pub const EXIT_NOT_HYPERBOLIC: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(InvalidConfig),
    #[error("unbounded distortion: {0}")]
    UnboundedDistortion(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_INVALID_CONFIG,
            CliError::UnboundedDistortion(_) => EXIT_UNBOUNDED_DISTORTION,
            CliError::Io(_) => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::UnboundedDistortion(_) => CliError::UnboundedDistortion(e.to_string()),
            ClassifyError::InvalidParameter(m) => CliError::Config(InvalidConfig::new("analysis", m)),
        }
    }
}

impl From<ShadowError> for CliError {
    fn from(e: ShadowError) -> Self {
        match e {
            ShadowError::WindowOverflow { .. } => CliError::Config(InvalidConfig::new("system.window", e.to_string())),
            ShadowError::InvalidParameter(_) | ShadowError::DeltaExceeded { .. } => {
                CliError::Config(InvalidConfig::new("shadow", e.to_string()))
            }
            ShadowError::NotHyperbolic | ShadowError::SplitLeak { .. } => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "orlicz-shadow",
    version,
    about = "Classify composition operators on Orlicz spaces and shadow their pseudo-orbits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Classify,
    Shadow,
    Distortion,
    Report,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distortion, rate tables, certificate, RN class and spectral brackets.
    Classify(CommonArgs),
    /// Classify, then shadow seeded pseudo-orbits (exit 4 if not hyperbolic).
    Shadow(CommonArgs),
    /// Bounded-distortion constants only.
    Distortion(CommonArgs),
    /// Everything, with all CSV exports.
    Report(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Directory that relative output paths resolve against.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Replace the configured seed list with this single seed.
    #[arg(long)]
    pub seed_override: Option<u64>,
    /// Suppress the one-line summary on stdout.
    #[arg(long)]
    pub quiet: bool,
}

impl Command {
    fn split(&self) -> (CommandKind, &CommonArgs) {
        match self {
            Command::Classify(a) => (CommandKind::Classify, a),
            Command::Shadow(a) => (CommandKind::Shadow, a),
            Command::Distortion(a) => (CommandKind::Distortion, a),
            Command::Report(a) => (CommandKind::Report, a),
        }
    }
}

/// Result of a command before anything touches the file system.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub report: Report,
    pub csv: CsvSet,
    pub summary: String,
    pub exit_code: i32,
}

fn unit_w(phi: &YoungFunction, sys: &DissipativeSystem) -> SimpleFunction {
    &SimpleFunction::level_indicator(sys, 0) * (1.0 / norms::level_norm(phi, sys, 0))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into())
}

pub fn cmd_classify(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (phi, sys) = cfg.build()?;
    let c = classify::classify(&phi, &sys, &cfg.analysis)?;
    let mut csv = CsvSet::default();
    csv.nu(&phi, &sys);
    csv.rates(&c.certificate.evidence);
    csv.masses(&sys);
    let cert = &c.certificate;
    let summary = format!(
        "class {} t={} K={} H={:.6} rn={:?}{}{}",
        cert.class.as_str(),
        fmt_opt(cert.t),
        fmt_opt(cert.k),
        c.distortion.h,
        c.rn.class,
        if cert.window_certified { "" } else { " (window-sampled)" },
        if cert.inconclusive { " inconclusive" } else { "" },
    );
    let mut report = Report::new(cfg.clone());
    report.certificate = Some(c.certificate);
    report.distortion = Some(c.distortion);
    report.rn_class = Some(c.rn);
    report.spectral = Some(c.spectral);
    Ok(CommandOutput { report, csv, summary, exit_code: EXIT_OK })
}

pub fn cmd_distortion(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (phi, sys) = cfg.build()?;
    let d = classify::distortion(&phi, &sys, cfg.analysis.window as i64, cfg.analysis.subset_cap);
    let rn = classify::rn_conditions(&sys, cfg.analysis.n_max, cfg.analysis.tol)?;
    let mut csv = CsvSet::default();
    csv.masses(&sys);
    csv.rn(&sys);
    let summary = format!(
        "K_subset={:.6} K_rn={:.6} H={:.6} subsets={}{}",
        d.k_subset,
        d.k_rn,
        d.h,
        d.subsets_checked,
        if d.sampled { " (sampled)" } else { "" }
    );
    let mut report = Report::new(cfg.clone());
    report.distortion = Some(d);
    report.rn_class = Some(rn);
    Ok(CommandOutput { report, csv, summary, exit_code: EXIT_OK })
}

/// Shadow every configured seed, or attach the drifting counterexample and
/// exit 4 when the certificate is NONE.
pub fn cmd_shadow(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let mut out = cmd_classify(cfg)?;
    let (phi, sys) = cfg.build()?;
    let cert = out.report.certificate.clone().expect("classify fills the certificate");
    let s = &cfg.shadow;
    if cert.class == HyperbolicClass::None {
        let drift = shadow::drifting_counterexample(&phi, &sys, s.length, if s.delta > 0.0 { s.delta } else { 1e-3 })?;
        out.summary = format!(
            "class NONE: not hyperbolic; drifting pseudo-orbit stays {:.3e} away (threshold {:.3e})",
            drift.best_distance, drift.threshold
        );
        out.report.shadow_runs = Some(ShadowSummary {
            delta: s.delta,
            length: s.length,
            epsilon_bound: None,
            max_epsilon: drift.best_distance,
            max_residual: 0.0,
            all_within_bound: false,
            runs: Vec::new(),
            drift: Some(drift),
        });
        out.exit_code = EXIT_NOT_HYPERBOLIC;
        return Ok(out);
    }
    let w = operator::factor_weights(&phi, &sys).map_err(|e| CliError::Internal(e.to_string()))?;
    let f0 = unit_w(&phi, &sys);
    let runs: Vec<ShadowRun> = s
        .seeds
        .par_iter()
        .map(|&seed| -> Result<ShadowRun, CliError> {
            let po = shadow::make_pseudo_orbit(&phi, &sys, &f0, s.length, s.delta, seed)?;
            let r = shadow::shadow(&phi, &sys, &cert, &po)?;
            let factor_deviation = shadow::factor_deviation(&phi, &sys, &w, &cert, &po)?;
            Ok(ShadowRun {
                seed,
                epsilon_achieved: r.epsilon_achieved,
                epsilon_bound: r.epsilon_bound,
                orbit_residual: r.orbit_residual,
                factor_deviation,
                within_bound: r.within_bound(),
                correction_norms: r.correction_norms,
                residuals: r.residuals,
            })
        })
        .collect::<Result<_, _>>()?;
    let summary = ShadowSummary {
        delta: s.delta,
        length: s.length,
        epsilon_bound: Some(shadow::shadow_bound(&cert, s.delta)?),
        max_epsilon: runs.iter().map(|r| r.epsilon_achieved).fold(0.0, f64::max),
        max_residual: runs.iter().map(|r| r.orbit_residual).fold(0.0, f64::max),
        all_within_bound: runs.iter().all(|r| r.within_bound),
        runs,
        drift: None,
    };
    out.csv.shadow_traces(&summary);
    out.summary = format!(
        "class {} shadowed {} seeds: max eps {:.3e} <= bound {:.3e}: {}; max residual {:.1e}",
        cert.class.as_str(),
        summary.runs.len(),
        summary.max_epsilon,
        summary.epsilon_bound.unwrap_or(f64::NAN),
        summary.all_within_bound,
        summary.max_residual
    );
    out.report.shadow_runs = Some(summary);
    Ok(out)
}

/// Full recompute with every CSV export; never exits 4.
pub fn cmd_report(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (_, sys) = cfg.build()?;
    let mut out = cmd_shadow(cfg)?;
    out.csv.rn(&sys);
    out.exit_code = EXIT_OK;
    out.summary = format!("report: {}", out.summary);
    Ok(out)
}

pub fn execute(kind: CommandKind, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    match kind {
        CommandKind::Classify => cmd_classify(cfg),
        CommandKind::Shadow => cmd_shadow(cfg),
        CommandKind::Distortion => cmd_distortion(cfg),
        CommandKind::Report => cmd_report(cfg),
    }
}

fn resolve(out: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        out.join(p)
    }
}

/// Write the report and CSV exports of `output` under `out_dir`.
pub fn write_output(output: &CommandOutput, out_dir: &Path) -> Result<(), CliError> {
    let o = &output.report.config.output;
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    report::write_atomic(&resolve(out_dir, &o.json), output.report.to_json().as_bytes()).map_err(io)?;
    let csv_dir = resolve(out_dir, &o.csv);
    for (name, text) in &output.csv.files {
        report::write_atomic(&csv_dir.join(name), text.as_bytes()).map_err(io)?;
    }
    Ok(())
}

/// Parse arguments, run, write files; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID_CONFIG } else { EXIT_OK };
        }
    };
    let (kind, common) = cli.command.split();
    let result = RunConfig::load(&common.config).and_then(|mut cfg| {
        if let Some(seed) = common.seed_override {
            cfg.shadow.seeds = vec![seed];
        }
        let output = execute(kind, &cfg)?;
        write_output(&output, &common.out)?;
        Ok(output)
    });
    match result {
        Ok(output) => {
            if !common.quiet {
                println!("{}", output.summary);
            }
            output.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
