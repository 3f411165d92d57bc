//! Command-line harness: parameter scans written as CSV plus a JSON manifest,
//! and an oracle verification suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod scans;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::{ExperimentConfig, Overrides};
use output::{ExperimentTiming, Manifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("runtime error: {0}")]
    Runtime(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Runtime(_) | CliError::Io(_) => EXIT_RUNTIME,
        }
    }
}

impl From<nhmf_core::Error> for CliError {
    fn from(e: nhmf_core::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "nhmf", version, about = "Exact, Hartree and large-N dynamics of non-Hermitian mean-field qubits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Linear entropy of the one-particle marginal over the (N, t) grid.
    EntropyScan(ScanArgs),
    /// Infidelity of the exact marginal against the Hartree solution.
    HartreeScan(ScanArgs),
    /// Infidelity of the exact marginal against its large-N limit.
    ConvergenceScan(ScanArgs),
    /// Limit wavefunction, maximizer and Hartree populations over time.
    LimitTrajectory(ScanArgs),
    /// Rate-function profiles f_t(x) with first and second derivatives.
    RateFunction(ScanArgs),
    /// Cross-check every fast path against its oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Key-value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p0: Option<f64>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_steps: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    n_points: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tail_fraction: Option<f64>,
}

impl ScanArgs {
    fn load(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        cfg.apply(&Overrides {
            p0: self.p0,
            t_min: self.t_min,
            t_max: self.t_max,
            t_steps: self.t_steps,
            n_min: self.n_min,
            n_max: self.n_max,
            n_points: self.n_points,
            out: self.out.clone(),
            seed: self.seed,
            tail_fraction: self.tail_fraction,
        });
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Key-value configuration file; only `seed` is read.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest particle number for the brute-force checks (4..=12).
    #[arg(long, default_value_t = verify::DEFAULT_MAX_N)]
    max_n: usize,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace the ZZ eigenvalues by a wrong formula (mutation test).
    #[arg(long, hide = true)]
    corrupt_eigenvalue: bool,
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("nhmf: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    let (name, args) = match command {
        Command::Verify(args) => return run_verify(&args),
        Command::EntropyScan(a) => ("entropy-scan", a),
        Command::HartreeScan(a) => ("hartree-scan", a),
        Command::ConvergenceScan(a) => ("convergence-scan", a),
        Command::LimitTrajectory(a) => ("limit-trajectory", a),
        Command::RateFunction(a) => ("rate-function", a),
    };
    let cfg = args.load()?;
    let start = Instant::now();
    let result = match name {
        "entropy-scan" => scans::entropy_scan(&cfg)?,
        "hartree-scan" => scans::hartree_scan(&cfg)?,
        "convergence-scan" => scans::convergence_scan(&cfg)?,
        "limit-trajectory" => scans::limit_trajectory(&cfg)?,
        _ => scans::rate_function_scan(&cfg)?,
    };
    let seconds = start.elapsed().as_secs_f64();
    std::fs::create_dir_all(&cfg.output_dir)?;
    let mut files = Vec::new();
    for table in &result.tables {
        files.push(output::write_csv(&cfg.output_dir, table)?);
    }
    let manifest = Manifest::new(
        name,
        &cfg,
        vec![ExperimentTiming { name: name.into(), wall_clock_seconds: seconds }],
        files,
        result.fits,
    );
    manifest.write(&cfg.output_dir)?;
    for f in &manifest.files {
        println!("wrote {} ({} rows)", cfg.output_dir.join(&f.name).display(), f.rows);
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let mut seed = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?.seed,
        None => ExperimentConfig::default().seed,
    };
    if let Some(s) = args.seed {
        seed = s;
    }
    let mut options = verify::VerifyOptions::new(seed, args.max_n)?;
    if args.corrupt_eigenvalue {
        options.eigenvalue = verify::corrupted_eigenvalue;
    }
    let report = verify::run_checks(&options)?;
    let text = report.to_string();
    print!("{text}");
    if let Some(path) = &args.out {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, &text)?;
    }
    match report.failures().as_slice() {
        [] => Ok(()),
        names => Err(CliError::Verification(names.join(", "))),
    }
}
