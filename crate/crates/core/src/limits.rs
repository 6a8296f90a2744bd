//! Period-length scaling, Merton and Heston baseline schedules, and the
//! convergence study of the optimal allocation as the rebalancing interval
//! shrinks.
//!
//! The daily coefficients are reparameterized for a period of `delta` days
//! (0 < delta <= 1) as
//!
//! ```text
//! alpha(delta) = alpha * delta^2        theta(delta) = theta / delta
//! omega(delta) = omega * delta^2        lambda, gamma unchanged
//! r(delta)     = r * delta
//! beta(delta)  = 1 - (1 - p) * delta - alpha * theta^2,   p = beta + alpha*theta^2
//! ```
//!
//! so alpha*theta^2 is invariant and the per-day persistence interpolates
//! linearly: persistence(delta) = 1 - (1 - p)*delta. In the limit the daily
//! variance v = h/delta follows a square-root diffusion with mean-reversion
//! kappa = 1 - p per day, level (alpha+omega)/(1-p) and volatility
//! 2*alpha*theta, perfectly negatively correlated with the price.

use crate::error::{Error, Result};
use crate::model::GarchParams;
use crate::recursion::{solve_optimal, Preferences, StrategySchedule};

/// Reference period length for the Heston baseline, in days.
pub const HESTON_DELTA_REF: f64 = 1.0 / 1024.0;

/// A parameter set rescaled to period length `delta` (days).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaScaling {
    pub delta: f64,
    pub scaled: GarchParams,
}

impl DeltaScaling {
    /// Human-readable name of the beta/omega convention, surfaced in output
    /// metadata so alternates can be compared.
    pub fn convention() -> &'static str {
        "linear-persistence: beta(d) = 1 - (1-p)*d - alpha*theta^2, omega(d) = omega*d^2"
    }
}

/// Implied diffusion-limit parameters of the daily variance process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionLimit {
    /// Mean-reversion speed per day, 1 - beta - alpha*theta^2.
    pub kappa: f64,
    /// Long-run daily variance.
    pub theta_v: f64,
    /// Volatility of variance, 2*alpha*theta.
    pub sigma: f64,
    /// Price/variance correlation (identically -1 in this limit).
    pub rho: f64,
    /// Risk premium on the simple return, lambda + 1/2.
    pub lambda_bar: f64,
}

pub fn diffusion_limit(params: &GarchParams) -> DiffusionLimit {
    DiffusionLimit {
        kappa: 1.0 - params.persistence(),
        theta_v: params.long_run_variance(),
        sigma: 2.0 * params.alpha * params.theta,
        rho: -1.0,
        lambda_bar: params.lambda_bar(),
    }
}

/// Rescales daily parameters to period length `delta` in (0, 1] days.
pub fn scale_params(params: &GarchParams, delta: f64) -> Result<DeltaScaling> {
    params.validate()?;
    if !delta.is_finite() || delta <= 0.0 || delta > 1.0 {
        return Err(Error::InvalidDelta { delta });
    }
    let p = params.persistence();
    let alpha_theta_sq = params.alpha * params.theta * params.theta;
    let scaled = GarchParams {
        alpha: params.alpha * delta * delta,
        theta: params.theta / delta,
        omega: params.omega * delta * delta,
        beta: 1.0 - (1.0 - p) * delta - alpha_theta_sq,
        lambda: params.lambda,
        r: params.r * delta,
    };
    scaled.validate()?;
    Ok(DeltaScaling { delta, scaled })
}

/// Baseline strategy families used for comparison studies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScheduleKind {
    Merton,
    Heston { delta_ref: f64 },
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineSchedule {
    pub kind: ScheduleKind,
    pub pi: StrategySchedule,
}

/// The constant single-period solution (lambda + 1/2) / (1 - gamma).
pub fn merton_schedule(params: &GarchParams, prefs: &Preferences) -> BaselineSchedule {
    let weight = params.lambda_bar() / (1.0 - prefs.gamma());
    BaselineSchedule {
        kind: ScheduleKind::Merton,
        pi: StrategySchedule::constant(weight, prefs.horizon()).expect("positive horizon"),
    }
}

/// The continuous-rebalancing baseline: solve at the fine reference period
/// and sample the resulting schedule at daily points. `prefs.horizon()` is
/// the horizon in days.
pub fn heston_schedule(params: &GarchParams, prefs: &Preferences) -> Result<BaselineSchedule> {
    heston_schedule_at(params, prefs, HESTON_DELTA_REF)
}

pub fn heston_schedule_at(
    params: &GarchParams,
    prefs: &Preferences,
    delta_ref: f64,
) -> Result<BaselineSchedule> {
    let steps_per_day = steps_per_day(delta_ref)?;
    let horizon_days = prefs.horizon();
    let scaling = scale_params(params, delta_ref)?;
    let fine_prefs = Preferences::new(
        prefs.gamma(),
        horizon_days * steps_per_day,
        prefs.initial_log_wealth(),
    )?;
    let fine = solve_optimal(&scaling.scaled, &fine_prefs)?;
    let daily: Vec<f64> =
        (0..horizon_days).map(|d| fine.schedule().get(d * steps_per_day)).collect();
    Ok(BaselineSchedule {
        kind: ScheduleKind::Heston { delta_ref },
        pi: StrategySchedule::new(daily)?,
    })
}

fn steps_per_day(delta: f64) -> Result<usize> {
    if !delta.is_finite() || delta <= 0.0 || delta > 1.0 {
        return Err(Error::InvalidDelta { delta });
    }
    let steps = 1.0 / delta;
    if (steps - steps.round()).abs() > 1e-9 {
        return Err(Error::InvalidDelta { delta });
    }
    Ok(steps.round() as usize)
}

/// One row of the convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub delta: f64,
    /// Initial allocation of the solution at this period length.
    pub pi0: f64,
    /// Initial allocation of the Heston baseline.
    pub pi_heston: f64,
    pub gap: f64,
}

/// Default sweep grid {1, 1/2, 1/4, ..., 2^-10} days.
pub fn default_delta_grid() -> Vec<f64> {
    (0..=10).map(|k| 0.5f64.powi(k)).collect()
}

/// Solves the problem at every period length in `deltas` (each must divide
/// the day evenly) and reports the initial allocation against the Heston
/// baseline. `prefs.horizon()` is in days.
pub fn convergence_sweep(
    params: &GarchParams,
    prefs: &Preferences,
    deltas: &[f64],
) -> Result<Vec<ConvergenceRow>> {
    let baseline = heston_schedule(params, prefs)?;
    let pi_heston = baseline.pi.get(0);
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let steps = steps_per_day(delta)?;
        let scaling = scale_params(params, delta)?;
        let fine_prefs = Preferences::new(
            prefs.gamma(),
            prefs.horizon() * steps,
            prefs.initial_log_wealth(),
        )?;
        let table = solve_optimal(&scaling.scaled, &fine_prefs)?;
        let pi0 = table.schedule().get(0);
        rows.push(ConvergenceRow { delta, pi0, pi_heston, gap: pi0 - pi_heston });
    }
    Ok(rows)
}

/// Residuals of the one-period conditional moments against their
/// continuous-time limits, all per unit time and in daily-variance units
/// v = h / delta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResiduals {
    /// Discrete drift minus r + pi*lambda*v + (pi - pi^2)*v/2. O(delta).
    pub mean_residual: f64,
    /// Discrete variance minus pi^2*v. O(delta).
    pub variance_residual: f64,
    /// Discrete variance/wealth covariance minus -2*alpha*theta*pi*v.
    /// Zero up to rounding: the discrete covariance is the limit exactly.
    pub covariance_residual: f64,
    /// Conditional correlation between variance and wealth increments;
    /// tends to -sign(theta) as delta shrinks.
    pub correlation: f64,
}

/// Compares the discrete conditional moments of the log-wealth increment at
/// period length `delta` (given the current per-period variance `h`) with
/// the diffusion limits. The drift and variance use the one-step-ahead
/// expected variance, which is where the O(delta) state-uncertainty residual
/// comes from.
pub fn limit_moment_check(
    params: &GarchParams,
    delta: f64,
    pi: f64,
    h: f64,
) -> Result<MomentResiduals> {
    let scaling = scale_params(params, delta)?;
    let s = &scaling.scaled;
    let v = h / delta;
    let drift_coef = pi * params.lambda + 0.5 * (pi - pi * pi);

    // one GARCH step ahead of h at the scaled parameters
    let e_h_next = s.omega + s.alpha + s.persistence() * h;
    let var_h_next = s.alpha * s.alpha * (2.0 + 4.0 * s.theta * s.theta * h);

    let mean_discrete = (s.r + drift_coef * e_h_next) / delta;
    let mean_limit = params.r + drift_coef * v;

    let var_discrete = (pi * pi * e_h_next + drift_coef * drift_coef * var_h_next) / delta;
    let var_limit = pi * pi * v;

    let cov_discrete = -2.0 * s.alpha * s.theta * pi * h / (delta * delta);
    let cov_limit = -2.0 * params.alpha * params.theta * pi * v;

    // paper's conditional correlation of the raw increments
    let theta_v_units = s.theta * delta.sqrt();
    let correlation = -2.0 * theta_v_units * v.sqrt()
        / (2.0 + 4.0 * theta_v_units * theta_v_units * v).sqrt();

    Ok(MomentResiduals {
        mean_residual: mean_discrete - mean_limit,
        variance_residual: var_discrete - var_limit,
        covariance_residual: cov_discrete - cov_limit,
        correlation,
    })
}
