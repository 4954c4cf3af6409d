//! Command-line driver.
//!
//! ```text
//! neutral-modes surface    [--config F] [--out D] [--grid NxM] [--format obj|ply]
//! neutral-modes energies   [...]   per-vertex fields + summary.csv (min/max/sup)
//! neutral-modes classify   [...]   prints the class, JSON report with --out
//! neutral-modes verify     [...]   cross-route and oracle suites over the corpus
//! neutral-modes reproduce  <soft-elasticity|dilation|enneper-bour3|goursat-kappa|all>
//! ```
//!
//! Expressions use the grammar of [`crate::holomorphic::parse`]; the config
//! file format is described in [`config`]. Exit codes: 0 success, 1 config
//! error, 2 numerical failure or a check above tolerance. Errors are
//! reported on stderr as a single JSON object.

pub mod config;
mod commands;
mod reproduce;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use config::JobConfig;

pub use reproduce::{table, Case, Row, SAMPLE_ANGLE, SAMPLE_RADII};
pub use verify::{run_suites, PairResult, SuiteResult, Tolerances};

#[derive(Parser, Debug)]
#[command(name = "neutral-modes", version, about = "Minimal-surface deformations: energies, neutral modes, meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the source surface and export a mesh.
    Surface(Common),
    /// Sample a deformation pair with per-vertex energy densities.
    Energies(Common),
    /// Classify a deformation pair.
    Classify(Common),
    /// Run the cross-route and finite-difference suites over the corpus.
    Verify(Common),
    /// Regenerate the worked example cases.
    Reproduce {
        #[arg(value_enum)]
        case: Case,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Default, Clone)]
struct Common {
    /// Key-value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sampling grid, e.g. 32x64.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, allow_hyphen_values = true)]
    alpha0: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
    /// Möbius coefficients a,b,c,d.
    #[arg(long, allow_hyphen_values = true)]
    mobius: Option<String>,
    /// Holomorphic generator g with λ = |g|, β = arg g.
    #[arg(long)]
    g: Option<String>,
    /// Extra `key=value` overrides (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Obj,
    Ply,
}

impl Common {
    fn job(&self) -> crate::Result<JobConfig> {
        let mut cfg = match &self.config {
            Some(p) => JobConfig::load(p)?,
            None => JobConfig::default(),
        };
        if let Some(o) = &self.out {
            cfg.set("out", &o.to_string_lossy())?;
        }
        let numbers = [("tol", self.tol), ("alpha0", self.alpha0), ("lambda", self.lambda), ("kappa", self.kappa)];
        for (k, v) in numbers {
            if let Some(v) = v {
                cfg.set(k, &format!("{v:?}"))?;
            }
        }
        let strings = [("grid", &self.grid), ("mobius", &self.mobius), ("g", &self.g)];
        for (k, v) in strings {
            if let Some(v) = v {
                cfg.set(k, v)?;
            }
        }
        if let Some(f) = self.format {
            cfg.set("format", if matches!(f, FormatArg::Obj) { "obj" } else { "ply" })?;
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("--set `{kv}` must be key=value")))?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }
}

/// Outcome of a subcommand that ran to completion.
pub(crate) enum Outcome {
    Ok,
    /// A check exceeded its tolerance.
    Failed(String),
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Surface(c) => c.job().and_then(|j| commands::surface(&j)),
        Command::Energies(c) => c.job().and_then(|j| commands::energies(&j)),
        Command::Classify(c) => c.job().and_then(|j| commands::classify(&j)),
        Command::Verify(c) => c.job().and_then(|j| verify::verify(&j)),
        Command::Reproduce { case, common } => common.job().and_then(|j| reproduce::reproduce(*case, &j)),
    };
    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed(msg)) => {
            eprintln!("{}", json!({"status": "failed", "kind": "check", "message": msg}));
            2
        }
        Err(e) => {
            let code = exit_code(&e);
            let kind = if code == 1 { "config" } else { "numerical" };
            eprintln!("{}", json!({"status": "error", "kind": kind, "error": error_name(&e), "message": e.to_string()}));
            code
        }
    }
}

/// 1 for configuration problems, 2 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::Parse(_) | Error::Io(_) | Error::DegenerateMoebius | Error::DomainViolation(_) => 1,
        _ => 2,
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::SingularPoint(_) => "singular_point",
        Error::DomainViolation(_) => "domain_violation",
        Error::ZeroCrossing(_) => "zero_crossing",
        Error::PathBlocked { .. } => "path_blocked",
        Error::NonFinite(_) => "non_finite",
        Error::QuadratureFailed(_) => "quadrature_failed",
        Error::DegenerateMoebius => "degenerate_moebius",
        Error::NotNeutral(_) => "not_neutral",
        Error::NotHolomorphic(_) => "not_holomorphic",
        Error::InvalidParams(_) => "invalid_params",
        Error::HierarchyViolation(_) => "hierarchy_violation",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
    }
}

pub(crate) fn write_file(dir: &FsPath, name: &str, contents: &str) -> crate::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

pub(crate) fn write_json(dir: &FsPath, name: &str, value: &serde_json::Value) -> crate::Result<PathBuf> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    write_file(dir, name, &(text + "\n"))
}

/// `path` relative to `base`, with forward slashes.
pub(crate) fn relative(path: &FsPath, base: &FsPath) -> String {
    path.strip_prefix(base).unwrap_or(path).to_string_lossy().replace('\\', "/")
}
