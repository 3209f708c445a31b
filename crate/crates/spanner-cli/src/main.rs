//! `spanner-lab`: seeded spanner-construction experiments on random
//! embedded graphs.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 internal invariant violation.

mod config;
mod modes;

use clap::Parser;
use config::{ConfigError, ExperimentConfig, Mode};
use modes::RunError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "spanner-lab",
    disable_help_flag = false,
    about = "Construct and verify (1+eps)-spanners of random embedded graphs"
)]
struct Cli {
    /// build | verify | lonely | sweep | rgg
    mode: String,
    /// key=value config file; flags below override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    /// Short-edge radius constant
    #[arg(long = "M")]
    m_const: Option<f64>,
    /// Far-pair radius constant
    #[arg(long = "K")]
    k_const: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of consecutive seeds to run
    #[arg(long)]
    seeds: Option<usize>,
    /// Geometric-graph radius (rgg mode)
    #[arg(long)]
    radius: Option<f64>,
    /// Output directory for report.json / edges.csv / sweep.csv / instance.txt
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(cli: &Cli) -> Result<(Mode, ExperimentConfig), RunError> {
    let mode: Mode = cli.mode.parse().map_err(RunError::Usage)?;
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path).map_err(|e| match e {
            ConfigError::Usage(msg) => RunError::Usage(msg),
            ConfigError::Io { path, source } => RunError::Io(format!("{path}: {source}")),
        })?,
        None => ExperimentConfig::default(),
    };
    if let Some(n) = cli.n {
        cfg.n = n;
    }
    if let Some(p) = cli.p {
        cfg.p = p;
    }
    if let Some(e) = cli.epsilon {
        cfg.epsilon = e;
    }
    if let Some(t) = cli.theta {
        cfg.theta = t;
    }
    if let Some(m) = cli.m_const {
        cfg.m_const = m;
    }
    if let Some(k) = cli.k_const {
        cfg.k_const = k;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(s) = cli.seeds {
        cfg.seeds = s;
    }
    if let Some(r) = cli.radius {
        cfg.radius = Some(r);
    }
    if let Some(o) = &cli.out {
        cfg.out = o.clone();
    }
    cfg.validate(&mode).map_err(RunError::Usage)?;
    Ok((mode, cfg))
}

fn run() -> Result<(), RunError> {
    let cli = Cli::try_parse().map_err(|e| RunError::Usage(e.to_string()))?;
    let (mode, cfg) = build_config(&cli)?;
    match mode {
        Mode::Build => modes::run_build(&cfg),
        Mode::Verify => modes::run_verify(&cfg),
        Mode::Lonely => modes::run_lonely(&cfg),
        Mode::Sweep => modes::run_sweep(&cfg),
        Mode::Rgg => modes::run_rgg(&cfg),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spanner-lab: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
