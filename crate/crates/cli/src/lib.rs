//! Command-line front end for the HN-GARCH portfolio optimization studies:
//! closed-form optimal schedules, Monte Carlo wealth simulation,
//! wealth-equivalent-loss sweeps, rebalancing-frequency convergence and
//! moment-generating-function grids, all emitted as self-describing CSVs.

pub mod artifact;
pub mod commands;
pub mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{RunConfig, ScheduleChoice, SweepKey};

/// Exit codes: 0 success, 2 config/validation, 3 admissibility, 4 I/O.
#[derive(Debug)]
pub struct AppError {
    pub message: String,
    pub code: u8,
}

impl AppError {
    pub fn config(message: impl Into<String>) -> Self {
        AppError { message: message.into(), code: 2 }
    }

    pub fn admissibility(message: impl Into<String>) -> Self {
        AppError { message: message.into(), code: 3 }
    }

    pub fn io(message: impl Into<String>) -> Self {
        AppError { message: message.into(), code: 4 }
    }
}

impl From<garch_portfolio::Error> for AppError {
    fn from(e: garch_portfolio::Error) -> Self {
        use garch_portfolio::Error::*;
        match e {
            InadmissibleCoefficient { .. } | MgfDivergent { .. } => {
                AppError::admissibility(e.to_string())
            }
            _ => AppError::config(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "garch-portfolio",
    about = "Dynamic portfolio optimization under the Heston-Nandi GARCH(1,1) model",
    version
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

/// Global flags mirroring the config-file keys; CLI beats file beats default.
#[derive(Args)]
struct Overrides {
    /// Key-value config file (one `key = value` per line, '#' comments)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory for CSV artifacts
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    theta: Option<f64>,
    #[arg(long, global = true)]
    omega: Option<f64>,
    #[arg(long, global = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    r: Option<f64>,
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// Horizon in trading periods (days; 252 per year)
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Initial log wealth
    #[arg(long, global = true)]
    w0: Option<f64>,
    #[arg(long = "n-paths", global = true)]
    n_paths: Option<usize>,
    /// Initial variance (defaults to the long-run value)
    #[arg(long, global = true)]
    h0: Option<f64>,
    /// Initial log price
    #[arg(long, global = true)]
    x0: Option<f64>,
    /// Initial wealth
    #[arg(long, global = true)]
    v0: Option<f64>,
    /// Force all simulation shocks to zero (deterministic debug mode)
    #[arg(long = "zero-shocks", global = true)]
    zero_shocks: Option<bool>,
    #[arg(long, global = true, value_enum)]
    schedule: Option<ScheduleChoice>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the dynamic program; write per-period weights and coefficients
    Optimize,
    /// Simulate wealth paths; write path summaries, terminal-gap and
    /// cash-flow distributions and return statistics
    Simulate,
    /// Wealth-equivalent-loss sweep over gamma or one model parameter
    Wel {
        /// Parameter to vary (gamma, or a model coefficient swept 50%-200%)
        #[arg(long, value_enum)]
        sweep: Option<SweepKey>,
        #[arg(long = "sweep-points")]
        sweep_points: Option<usize>,
        #[arg(long = "gamma-min", allow_hyphen_values = true)]
        gamma_min: Option<f64>,
        #[arg(long = "gamma-max", allow_hyphen_values = true)]
        gamma_max: Option<f64>,
        /// Variance plugged into the loss formula (defaults to the base
        /// long-run value, held fixed across the sweep)
        #[arg(long = "h-next")]
        h_next: Option<f64>,
    },
    /// Convergence of the initial allocation as the period length shrinks
    Converge {
        /// Comma-separated period lengths in days, each dividing one day
        #[arg(long, value_delimiter = ',')]
        deltas: Option<Vec<f64>>,
    },
    /// Moment-generating-function grid and wealth cumulants
    Mgf {
        #[arg(long = "u-min", allow_hyphen_values = true)]
        u_min: Option<f64>,
        #[arg(long = "u-max", allow_hyphen_values = true)]
        u_max: Option<f64>,
        #[arg(long = "u-count")]
        u_count: Option<usize>,
    },
}

fn merge(cli: &Overrides) -> Result<RunConfig, AppError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    macro_rules! apply {
        ($($field:ident),*) => {
            $(if let Some(v) = cli.$field { cfg.$field = v; })*
        };
    }
    apply!(seed, alpha, beta, theta, omega, lambda, r, gamma, w0, x0, v0, zero_shocks);
    if let Some(v) = cli.horizon {
        cfg.horizon = v;
    }
    if let Some(v) = cli.n_paths {
        cfg.n_paths = v;
    }
    if let Some(v) = cli.h0 {
        cfg.h0 = Some(v);
    }
    if let Some(v) = cli.schedule {
        cfg.schedule = v;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), AppError> {
    let mut cfg = merge(&cli.overrides)?;
    let out = cli.overrides.out.clone();
    match cli.command {
        Command::Optimize => commands::optimize::run(&cfg, &out),
        Command::Simulate => commands::simulate::run(&cfg, &out),
        Command::Wel { sweep, sweep_points, gamma_min, gamma_max, h_next } => {
            if let Some(v) = sweep {
                cfg.sweep = v;
            }
            if let Some(v) = sweep_points {
                cfg.sweep_points = v;
            }
            if let Some(v) = gamma_min {
                cfg.gamma_min = v;
            }
            if let Some(v) = gamma_max {
                cfg.gamma_max = v;
            }
            if let Some(v) = h_next {
                cfg.h_next = Some(v);
            }
            commands::wel::run(&cfg, &out)
        }
        Command::Converge { deltas } => {
            if let Some(v) = deltas {
                cfg.deltas = v;
            }
            commands::converge::run(&cfg, &out)
        }
        Command::Mgf { u_min, u_max, u_count } => {
            if let Some(v) = u_min {
                cfg.u_min = v;
            }
            if let Some(v) = u_max {
                cfg.u_max = v;
            }
            if let Some(v) = u_count {
                cfg.u_count = v;
            }
            commands::mgf::run(&cfg, &out)
        }
    }
}

/// Parses the process arguments and runs the selected command.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
