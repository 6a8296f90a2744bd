//! Seeded Monte Carlo engine for HN-GARCH paths, exact vs approximated
//! self-financing wealth, maintenance cash flows and realized-return
//! statistics.
//!
//! Two wealth processes are tracked from the same shocks:
//!
//! ```text
//! exact:  V_t = V_{t-1} * (pi*e^{X_t - X_{t-1}} + (1-pi)*e^r)
//! proxy:  W_t = W_{t-1} + pi*(X_t - X_{t-1}) + (1-pi)*r + (pi - pi^2)*h_t/2
//! ```
//!
//! The proxy is the second-order log approximation of the self-financing
//! condition; the per-period maintenance cash flow is what an investor must
//! pay in (positive) or may withdraw (negative), as a fraction of current
//! wealth, to keep the exact dynamics glued to the proxy:
//!
//! ```text
//! cash_t = e^{W_t - W_{t-1}} - (pi*e^{X_t - X_{t-1}} + (1-pi)*e^r)
//! ```
//!
//! Paths are simulated in parallel; path i draws from substream i of the
//! seeded generator, so its content is independent of the thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::GarchParams;
use crate::recursion::{Preferences, StrategySchedule};
use crate::rng::ShockStream;
use crate::stats::{DistSummary, Moments};
use crate::PERIODS_PER_YEAR;

/// Simulation size, seed and initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub n_paths: usize,
    /// Horizon in periods.
    pub horizon: usize,
    pub seed: u64,
    /// Variance of the first period (known at time zero).
    pub h0: f64,
    /// Initial log price.
    pub x0: f64,
    /// Initial wealth (positive; log wealth starts at ln v0).
    pub v0: f64,
    /// Force all shocks to zero (deterministic debug mode).
    pub zero_shocks: bool,
}

impl SimConfig {
    pub fn new(n_paths: usize, horizon: usize, seed: u64, h0: f64, x0: f64, v0: f64) -> Self {
        SimConfig { n_paths, horizon, seed, h0, x0, v0, zero_shocks: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(Error::InvalidSimConfig { reason: "n_paths must be at least 1" });
        }
        if self.horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        if !self.h0.is_finite() || self.h0 <= 0.0 {
            return Err(Error::InvalidSimConfig { reason: "h0 must be strictly positive" });
        }
        if !self.x0.is_finite() {
            return Err(Error::InvalidSimConfig { reason: "x0 must be finite" });
        }
        if !self.v0.is_finite() || self.v0 <= 0.0 {
            return Err(Error::InvalidSimConfig { reason: "v0 must be strictly positive" });
        }
        Ok(())
    }
}

/// Dense row-major matrix of simulated values; one row per path.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Values of one column across all rows.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Simulated shock/variance/log-price/wealth arrays plus the configuration
/// that produced them. Column j of the step matrices (`shocks`, `cash`)
/// belongs to the period from j to j+1; the state matrices have T+1 columns.
#[derive(Debug, Clone)]
pub struct PathSet {
    pub config: SimConfig,
    pub schedule: StrategySchedule,
    /// n x T standard normal shocks.
    pub shocks: Matrix,
    /// n x (T+1) conditional variances; column j is the variance of period j.
    pub variance: Matrix,
    /// n x (T+1) log prices.
    pub log_price: Matrix,
    /// n x (T+1) log wealth under the proxy (second-order) dynamics.
    pub log_wealth_proxy: Matrix,
    /// n x (T+1) wealth under the exact self-financing dynamics.
    pub wealth_exact: Matrix,
    /// n x T per-period maintenance cash flows (fractions of current wealth).
    pub cash: Matrix,
    /// Paths whose exact wealth turned nonpositive (possible only with
    /// leverage or short positions); excluded from gap statistics.
    pub flagged: Vec<bool>,
}

impl PathSet {
    pub fn n_paths(&self) -> usize {
        self.config.n_paths
    }

    pub fn horizon(&self) -> usize {
        self.config.horizon
    }

    pub fn flagged_count(&self) -> usize {
        self.flagged.iter().filter(|&&f| f).count()
    }
}

/// Simulates `config.n_paths` forward paths under `schedule`, returning every
/// intermediate array. Deterministic given the config (seed included).
pub fn simulate_paths(
    params: &GarchParams,
    config: &SimConfig,
    schedule: &StrategySchedule,
) -> Result<PathSet> {
    params.validate()?;
    config.validate()?;
    if schedule.len() != config.horizon {
        return Err(Error::MismatchedHorizon { expected: config.horizon, got: schedule.len() });
    }
    let n = config.n_paths;
    let t_max = config.horizon;
    let mut shocks = Matrix::zeros(n, t_max);
    let mut variance = Matrix::zeros(n, t_max + 1);
    let mut log_price = Matrix::zeros(n, t_max + 1);
    let mut log_wealth = Matrix::zeros(n, t_max + 1);
    let mut wealth_exact = Matrix::zeros(n, t_max + 1);
    let mut cash = Matrix::zeros(n, t_max);
    let mut flagged = vec![false; n];

    let weights = schedule.weights();
    let er = params.r.exp();
    let cfg = *config;
    let prm = *params;

    (
        shocks.data.par_chunks_mut(t_max),
        variance.data.par_chunks_mut(t_max + 1),
        log_price.data.par_chunks_mut(t_max + 1),
        log_wealth.data.par_chunks_mut(t_max + 1),
        wealth_exact.data.par_chunks_mut(t_max + 1),
        cash.data.par_chunks_mut(t_max),
        flagged.par_iter_mut(),
    )
        .into_par_iter()
        .enumerate()
        .for_each(|(i, (z_row, h_row, x_row, w_row, v_row, c_row, flag))| {
            let mut stream = ShockStream::new(cfg.seed, i as u64);
            let mut h = cfg.h0;
            let mut x = cfg.x0;
            let mut w = cfg.v0.ln();
            let mut v = cfg.v0;
            h_row[0] = h;
            x_row[0] = x;
            w_row[0] = w;
            v_row[0] = v;
            for j in 0..t_max {
                let z = if cfg.zero_shocks { 0.0 } else { stream.next_normal() };
                let pi = weights[j];
                let dx = prm.r + prm.lambda * h + h.sqrt() * z;
                let dw = pi * dx + (1.0 - pi) * prm.r + (pi - pi * pi) * 0.5 * h;
                let growth = pi * dx.exp() + (1.0 - pi) * er;
                z_row[j] = z;
                c_row[j] = dw.exp() - growth;
                x += dx;
                w += dw;
                v *= growth;
                if v <= 0.0 {
                    *flag = true;
                }
                h = prm.next_variance(h, z);
                x_row[j + 1] = x;
                w_row[j + 1] = w;
                v_row[j + 1] = v;
                h_row[j + 1] = h;
            }
        });

    Ok(PathSet {
        config: *config,
        schedule: schedule.clone(),
        shocks,
        variance,
        log_price,
        log_wealth_proxy: log_wealth,
        wealth_exact,
        cash,
        flagged,
    })
}

/// Distributions of the maintenance cash flows: pooled daily flows (fraction
/// of the wealth at the start of each period) and per-path cumulative flows
/// over the horizon (fraction of initial wealth).
#[derive(Debug, Clone, PartialEq)]
pub struct CashflowReport {
    pub daily: DistSummary,
    pub cumulative: DistSummary,
}

pub fn maintenance_cashflows(paths: &PathSet) -> CashflowReport {
    let daily = DistSummary::from_values(paths.cash.as_slice().to_vec());
    let v0 = paths.config.v0;
    let cumulative: Vec<f64> = (0..paths.n_paths())
        .map(|i| {
            let w = paths.log_wealth_proxy.row(i);
            paths
                .cash
                .row(i)
                .iter()
                .enumerate()
                .map(|(j, &c)| c * w[j].exp() / v0)
                .sum()
        })
        .collect();
    CashflowReport { daily, cumulative: DistSummary::from_values(cumulative) }
}

/// Distribution of the per-path terminal difference between the exact and
/// proxy wealth, (V_T - e^{W_T}) / v0, over non-flagged paths.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub summary: DistSummary,
    /// Flagged paths excluded from the distribution.
    pub excluded: usize,
}

pub fn terminal_wealth_gap(paths: &PathSet) -> GapReport {
    let t = paths.horizon();
    let v0 = paths.config.v0;
    let gaps: Vec<f64> = (0..paths.n_paths())
        .filter(|&i| !paths.flagged[i])
        .map(|i| (paths.wealth_exact.get(i, t) - paths.log_wealth_proxy.get(i, t).exp()) / v0)
        .collect();
    GapReport { summary: DistSummary::from_values(gaps), excluded: paths.flagged_count() }
}

/// Which wealth process a statistic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WealthProcess {
    Proxy,
    Exact,
}

/// Sample moments of annualized simple returns plus realized expected utility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnStats {
    pub mean: f64,
    pub stdev: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    /// mean / stdev of the annual simple return.
    pub sharpe_ratio: f64,
    /// Sample mean of e^{gamma * W_T} / gamma.
    pub expected_utility: f64,
    /// Paths used (flagged paths are dropped for the exact process).
    pub n_used: usize,
}

pub fn return_statistics(paths: &PathSet, prefs: &Preferences, which: WealthProcess) -> ReturnStats {
    let t = paths.horizon();
    let v0 = paths.config.v0;
    let gamma = prefs.gamma();
    let annualize = PERIODS_PER_YEAR / t as f64;
    let mut returns = Moments::new();
    let mut utility = Moments::new();
    let mut n_used = 0usize;
    for i in 0..paths.n_paths() {
        let log_terminal = match which {
            WealthProcess::Proxy => paths.log_wealth_proxy.get(i, t),
            WealthProcess::Exact => {
                if paths.flagged[i] {
                    continue;
                }
                paths.wealth_exact.get(i, t).ln()
            }
        };
        let log_growth = log_terminal - v0.ln();
        returns.push((log_growth * annualize).exp() - 1.0);
        utility.push((gamma * log_terminal).exp() / gamma);
        n_used += 1;
    }
    ReturnStats {
        mean: returns.mean(),
        stdev: returns.stdev(),
        skewness: returns.skewness(),
        kurtosis: returns.kurtosis(),
        sharpe_ratio: returns.mean() / returns.stdev(),
        expected_utility: utility.mean(),
        n_used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{solve_optimal, Preferences};
    use approx::assert_relative_eq;

    fn base_config(n: usize, horizon: usize) -> SimConfig {
        let p = GarchParams::christoffersen();
        SimConfig::new(n, horizon, 42, p.long_run_variance(), 0.0, 1.0)
    }

    #[test]
    fn config_validation() {
        let good = base_config(10, 5);
        assert!(good.validate().is_ok());
        assert!(SimConfig { n_paths: 0, ..good }.validate().is_err());
        assert!(SimConfig { horizon: 0, ..good }.validate().is_err());
        assert!(SimConfig { h0: 0.0, ..good }.validate().is_err());
        assert!(SimConfig { v0: -1.0, ..good }.validate().is_err());
    }

    #[test]
    fn zero_schedule_grows_at_the_risk_free_rate() {
        let p = GarchParams::christoffersen();
        let cfg = base_config(50, 100);
        let s = StrategySchedule::constant(0.0, 100).unwrap();
        let paths = simulate_paths(&p, &cfg, &s).unwrap();
        let expect = (p.r * 100.0).exp();
        for i in 0..50 {
            assert_relative_eq!(paths.wealth_exact.get(i, 100), expect, max_relative = 1e-12);
            assert_relative_eq!(paths.log_wealth_proxy.get(i, 100), p.r * 100.0, max_relative = 1e-12);
            assert!(paths.cash.row(i).iter().all(|&c| c == 0.0));
        }
    }

    #[test]
    fn unit_schedule_has_no_cash_flows_and_matching_wealth() {
        let p = GarchParams::christoffersen();
        let cfg = base_config(50, 252);
        let s = StrategySchedule::constant(1.0, 252).unwrap();
        let paths = simulate_paths(&p, &cfg, &s).unwrap();
        for i in 0..50 {
            assert!(paths.cash.row(i).iter().all(|&c| c == 0.0));
            let proxy = paths.log_wealth_proxy.get(i, 252).exp();
            let exact = paths.wealth_exact.get(i, 252);
            assert_relative_eq!(proxy, exact, max_relative = 1e-12);
            // at pi = 1, log wealth tracks the log price move one-for-one
            let dx = paths.log_price.get(i, 252) - paths.log_price.get(i, 0);
            assert_relative_eq!(paths.log_wealth_proxy.get(i, 252), dx, max_relative = 1e-12, epsilon = 1e-12);
        }
        let gap = terminal_wealth_gap(&paths);
        assert!(gap.summary.quantile_at(0.99).abs() < 1e-12);
    }

    #[test]
    fn zero_shock_mode_is_the_deterministic_recursion() {
        let p = GarchParams::christoffersen();
        let mut cfg = base_config(3, 40);
        cfg.zero_shocks = true;
        let s = StrategySchedule::constant(0.6, 40).unwrap();
        let paths = simulate_paths(&p, &cfg, &s).unwrap();
        // hand-rolled deterministic evaluation
        let mut h = cfg.h0;
        let mut x = 0.0;
        let mut w = 0.0;
        let mut v = 1.0;
        for _ in 0..40 {
            let dx = p.r + p.lambda * h;
            let dw = 0.6 * dx + 0.4 * p.r + (0.6 - 0.36) * 0.5 * h;
            v *= 0.6 * dx.exp() + 0.4 * p.r.exp();
            x += dx;
            w += dw;
            h = p.omega + p.beta * h + p.alpha * p.theta * p.theta * h;
        }
        for i in 0..3 {
            assert_relative_eq!(paths.variance.get(i, 40), h, max_relative = 1e-13);
            assert_relative_eq!(paths.log_price.get(i, 40), x, max_relative = 1e-13);
            assert_relative_eq!(paths.log_wealth_proxy.get(i, 40), w, max_relative = 1e-13);
            assert_relative_eq!(paths.wealth_exact.get(i, 40), v, max_relative = 1e-13);
        }
    }

    #[test]
    fn paths_are_bit_identical_across_runs() {
        let p = GarchParams::christoffersen();
        let cfg = base_config(20, 30);
        let table = solve_optimal(&p, &Preferences::new(-5.0, 30, 0.0).unwrap()).unwrap();
        let a = simulate_paths(&p, &cfg, table.schedule()).unwrap();
        let b = simulate_paths(&p, &cfg, table.schedule()).unwrap();
        assert_eq!(a.shocks, b.shocks);
        assert_eq!(a.variance, b.variance);
        assert_eq!(a.wealth_exact, b.wealth_exact);
        assert_eq!(a.log_wealth_proxy, b.log_wealth_proxy);
        assert_eq!(a.cash, b.cash);
    }

    #[test]
    fn variance_stays_positive_and_shocks_feed_the_price() {
        let p = GarchParams::christoffersen();
        let cfg = base_config(10, 50);
        let s = StrategySchedule::constant(0.5, 50).unwrap();
        let paths = simulate_paths(&p, &cfg, &s).unwrap();
        assert!(paths.variance.as_slice().iter().all(|&h| h > 0.0));
        for i in 0..10 {
            for j in 0..50 {
                let h = paths.variance.get(i, j);
                let expect = p.r + p.lambda * h + h.sqrt() * paths.shocks.get(i, j);
                let dx = paths.log_price.get(i, j + 1) - paths.log_price.get(i, j);
                assert_relative_eq!(dx, expect, max_relative = 1e-10, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn degenerate_variance_shrinks_the_gap() {
        // omega = alpha = 0 and tiny h0: no randomness left, gap collapses
        let p = GarchParams { omega: 0.0, alpha: 0.0, ..GarchParams::christoffersen() };
        let s = StrategySchedule::constant(0.7, 60).unwrap();
        let mut widths = Vec::new();
        for h0 in [1e-6, 1e-10] {
            let cfg = SimConfig::new(200, 60, 11, h0, 0.0, 1.0);
            let paths = simulate_paths(&p, &cfg, &s).unwrap();
            let gap = terminal_wealth_gap(&paths);
            widths.push(gap.summary.quantile_at(0.99) - gap.summary.quantile_at(0.01));
        }
        assert!(widths[1] < widths[0] / 100.0);
    }

    #[test]
    fn return_statistics_of_the_bond() {
        let p = GarchParams::christoffersen();
        let cfg = base_config(500, 252);
        let s = StrategySchedule::constant(0.0, 252).unwrap();
        let paths = simulate_paths(&p, &cfg, &s).unwrap();
        let prefs = Preferences::new(-5.0, 252, 0.0).unwrap();
        let stats = return_statistics(&paths, &prefs, WealthProcess::Exact);
        assert_relative_eq!(stats.mean, (252.0 * p.r).exp() - 1.0, max_relative = 1e-10);
        assert!(stats.stdev < 1e-12);
        assert_eq!(stats.n_used, 500);
    }

    #[test]
    fn pearson_bound_on_simulated_returns() {
        let p = GarchParams::christoffersen();
        let cfg = base_config(2_000, 252);
        let table = solve_optimal(&p, &Preferences::new(-5.0, 252, 0.0).unwrap()).unwrap();
        let paths = simulate_paths(&p, &cfg, table.schedule()).unwrap();
        let prefs = Preferences::new(-5.0, 252, 0.0).unwrap();
        for which in [WealthProcess::Proxy, WealthProcess::Exact] {
            let s = return_statistics(&paths, &prefs, which);
            assert!(s.kurtosis >= 1.0 + s.skewness * s.skewness);
        }
    }

    #[test]
    fn schedule_horizon_mismatch_is_an_error() {
        let p = GarchParams::christoffersen();
        let cfg = base_config(5, 10);
        let s = StrategySchedule::constant(0.5, 9).unwrap();
        assert!(matches!(
            simulate_paths(&p, &cfg, &s),
            Err(Error::MismatchedHorizon { expected: 10, got: 9 })
        ));
    }
}
