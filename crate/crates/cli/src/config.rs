//! Flat key-value run configuration: file parsing, CLI overrides, defaults
//! and the self-describing metadata header written into every CSV.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use garch_portfolio::model::GarchParams;
use garch_portfolio::recursion::Preferences;
use garch_portfolio::simulate::SimConfig;

use crate::AppError;

/// Formats a float with 17 significant digits so it round-trips exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Which strategy schedule a command operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScheduleChoice {
    /// The dynamic-programming optimum.
    Optimal,
    /// The constant single-period solution (lambda+1/2)/(1-gamma).
    Merton,
    /// The continuous-rebalancing limit sampled daily.
    Heston,
    /// Everything in the risk-free account.
    Zero,
}

impl fmt::Display for ScheduleChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScheduleChoice::Optimal => "optimal",
            ScheduleChoice::Merton => "merton",
            ScheduleChoice::Heston => "heston",
            ScheduleChoice::Zero => "zero",
        };
        f.write_str(s)
    }
}

impl FromStr for ScheduleChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "optimal" => Ok(ScheduleChoice::Optimal),
            "merton" => Ok(ScheduleChoice::Merton),
            "heston" => Ok(ScheduleChoice::Heston),
            "zero" => Ok(ScheduleChoice::Zero),
            other => Err(format!("unknown schedule '{other}' (optimal|merton|heston|zero)")),
        }
    }
}

/// Parameter varied by the `wel` sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepKey {
    Gamma,
    Alpha,
    Beta,
    Theta,
    Omega,
    Lambda,
    R,
}

impl fmt::Display for SweepKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SweepKey::Gamma => "gamma",
            SweepKey::Alpha => "alpha",
            SweepKey::Beta => "beta",
            SweepKey::Theta => "theta",
            SweepKey::Omega => "omega",
            SweepKey::Lambda => "lambda",
            SweepKey::R => "r",
        };
        f.write_str(s)
    }
}

impl FromStr for SweepKey {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gamma" => Ok(SweepKey::Gamma),
            "alpha" => Ok(SweepKey::Alpha),
            "beta" => Ok(SweepKey::Beta),
            "theta" => Ok(SweepKey::Theta),
            "omega" => Ok(SweepKey::Omega),
            "lambda" => Ok(SweepKey::Lambda),
            "r" => Ok(SweepKey::R),
            other => Err(format!("unknown sweep key '{other}'")),
        }
    }
}

/// All run settings after merging defaults, the config file and CLI flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    // model
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub omega: f64,
    pub lambda: f64,
    pub r: f64,
    // preferences
    pub gamma: f64,
    pub horizon: usize,
    pub w0: f64,
    // simulation
    pub n_paths: usize,
    pub seed: u64,
    pub h0: Option<f64>,
    pub x0: f64,
    pub v0: f64,
    pub zero_shocks: bool,
    pub schedule: ScheduleChoice,
    // wel sweep
    pub sweep: SweepKey,
    pub sweep_points: usize,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub h_next: Option<f64>,
    // convergence sweep
    pub deltas: Vec<f64>,
    // mgf grid
    pub u_min: f64,
    pub u_max: f64,
    pub u_count: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let base = GarchParams::christoffersen();
        RunConfig {
            alpha: base.alpha,
            beta: base.beta,
            theta: base.theta,
            omega: base.omega,
            lambda: base.lambda,
            r: base.r,
            gamma: -5.0,
            horizon: 252,
            w0: 0.0,
            n_paths: 10_000,
            seed: 42,
            h0: None,
            x0: 0.0,
            v0: 1.0,
            zero_shocks: false,
            schedule: ScheduleChoice::Optimal,
            sweep: SweepKey::Gamma,
            sweep_points: 25,
            gamma_min: -10.0,
            gamma_max: -0.1,
            h_next: None,
            deltas: garch_portfolio::limits::default_delta_grid(),
            u_min: -2.0,
            u_max: 2.0,
            u_count: 9,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, AppError>
where
    T::Err: fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| AppError::config(format!("config key '{key}': {e}")))
}

fn parse_deltas(value: &str) -> Result<Vec<f64>, AppError> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| AppError::config(format!("config key 'deltas': {e}")))
        })
        .collect()
}

impl RunConfig {
    /// Parses a `key = value` file ('#' starts a comment) on top of defaults.
    pub fn from_file(path: &Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::io(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                AppError::config(format!("{}:{}: expected 'key = value'", path.display(), lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), AppError> {
        match key {
            "alpha" => self.alpha = parse_value(key, value)?,
            "beta" => self.beta = parse_value(key, value)?,
            "theta" => self.theta = parse_value(key, value)?,
            "omega" => self.omega = parse_value(key, value)?,
            "lambda" => self.lambda = parse_value(key, value)?,
            "r" => self.r = parse_value(key, value)?,
            "gamma" => self.gamma = parse_value(key, value)?,
            "horizon" => self.horizon = parse_value(key, value)?,
            "w0" => self.w0 = parse_value(key, value)?,
            "n_paths" => self.n_paths = parse_value(key, value)?,
            "seed" => self.seed = parse_value(key, value)?,
            "h0" => self.h0 = Some(parse_value(key, value)?),
            "x0" => self.x0 = parse_value(key, value)?,
            "v0" => self.v0 = parse_value(key, value)?,
            "zero_shocks" => self.zero_shocks = parse_value(key, value)?,
            "schedule" => self.schedule = parse_value(key, value)?,
            "sweep" => self.sweep = parse_value(key, value)?,
            "sweep_points" => self.sweep_points = parse_value(key, value)?,
            "gamma_min" => self.gamma_min = parse_value(key, value)?,
            "gamma_max" => self.gamma_max = parse_value(key, value)?,
            "h_next" => self.h_next = Some(parse_value(key, value)?),
            "deltas" => self.deltas = parse_deltas(value)?,
            "u_min" => self.u_min = parse_value(key, value)?,
            "u_max" => self.u_max = parse_value(key, value)?,
            "u_count" => self.u_count = parse_value(key, value)?,
            other => return Err(AppError::config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    pub fn params(&self) -> GarchParams {
        GarchParams {
            alpha: self.alpha,
            beta: self.beta,
            theta: self.theta,
            omega: self.omega,
            lambda: self.lambda,
            r: self.r,
        }
    }

    pub fn preferences(&self) -> Result<Preferences, AppError> {
        Preferences::new(self.gamma, self.horizon, self.w0).map_err(AppError::from)
    }

    /// h0 resolved to the long-run variance when unset.
    pub fn resolved_h0(&self) -> f64 {
        self.h0.unwrap_or_else(|| self.params().long_run_variance())
    }

    /// h_next for WEL evaluation, defaulting to the base-parameter long-run
    /// variance (held fixed across the sweep).
    pub fn resolved_h_next(&self) -> f64 {
        self.h_next.unwrap_or_else(|| self.params().long_run_variance())
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            n_paths: self.n_paths,
            horizon: self.horizon,
            seed: self.seed,
            h0: self.resolved_h0(),
            x0: self.x0,
            v0: self.v0,
            zero_shocks: self.zero_shocks,
        }
    }

    /// Metadata rows common to every command, with resolved values so the
    /// header alone reproduces the run.
    pub fn metadata(&self) -> Vec<(String, String)> {
        vec![
            ("alpha".into(), fmt_f64(self.alpha)),
            ("beta".into(), fmt_f64(self.beta)),
            ("theta".into(), fmt_f64(self.theta)),
            ("omega".into(), fmt_f64(self.omega)),
            ("lambda".into(), fmt_f64(self.lambda)),
            ("r".into(), fmt_f64(self.r)),
            ("gamma".into(), fmt_f64(self.gamma)),
            ("horizon".into(), self.horizon.to_string()),
            ("w0".into(), fmt_f64(self.w0)),
            ("n_paths".into(), self.n_paths.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("h0".into(), fmt_f64(self.resolved_h0())),
            ("x0".into(), fmt_f64(self.x0)),
            ("v0".into(), fmt_f64(self.v0)),
            ("zero_shocks".into(), self.zero_shocks.to_string()),
            ("schedule".into(), self.schedule.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_parsing_and_defaults() {
        let dir = std::env::temp_dir().join("garch-portfolio-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# a comment").unwrap();
        writeln!(f, "gamma = -2.5").unwrap();
        writeln!(f, "horizon = 10").unwrap();
        writeln!(f, "deltas = 1, 0.5").unwrap();
        writeln!(f, "schedule = merton").unwrap();
        drop(f);
        let cfg = RunConfig::from_file(&path).unwrap();
        assert_eq!(cfg.gamma, -2.5);
        assert_eq!(cfg.horizon, 10);
        assert_eq!(cfg.deltas, vec![1.0, 0.5]);
        assert_eq!(cfg.schedule, ScheduleChoice::Merton);
        // untouched keys keep defaults
        assert_eq!(cfg.alpha, 3.660e-6);
        assert_eq!(cfg.seed, 42);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut cfg = RunConfig::default();
        assert!(cfg.set("alphaa", "1").is_err());
        assert!(cfg.set("gamma", "not-a-number").is_err());
    }

    #[test]
    fn resolved_h0_defaults_to_long_run() {
        let cfg = RunConfig::default();
        let hbar = cfg.params().long_run_variance();
        assert_eq!(cfg.resolved_h0(), hbar);
        let mut cfg = cfg;
        cfg.set("h0", "2e-4").unwrap();
        assert_eq!(cfg.resolved_h0(), 2e-4);
    }

    #[test]
    fn seventeen_digit_round_trip() {
        for x in [0.5453333333333333, 9.884290402631123e-5, -0.1689989, 1.0 / 3.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn metadata_lines_reparse_into_the_same_config() {
        let mut cfg = RunConfig::default();
        cfg.set("gamma", "-7.25").unwrap();
        cfg.set("n_paths", "777").unwrap();
        let mut rebuilt = RunConfig::default();
        for (k, v) in cfg.metadata() {
            rebuilt.set(&k, &v).unwrap();
        }
        assert_eq!(rebuilt.gamma, cfg.gamma);
        assert_eq!(rebuilt.n_paths, cfg.n_paths);
        assert_eq!(rebuilt.resolved_h0(), cfg.resolved_h0());
    }
}
