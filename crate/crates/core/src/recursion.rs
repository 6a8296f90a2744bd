//! Backward Bellman recursions for CRRA terminal-wealth utility under the
//! HN-GARCH model, the optimal allocation and its myopic/hedging split, and
//! the wealth-equivalent loss of suboptimal strategies.
//!
//! The value function is exponential-affine in log wealth and next-period
//! variance,
//!
//! ```text
//! Phi_t(w, h) = (1/gamma) * exp{ D_t + gamma*w + E_t*h }
//! ```
//!
//! with terminal anchors D_T = E_T = 0 and, stepping from t+1 to t,
//!
//! ```text
//! pi_t = [(lambda+1/2)*X - 2*alpha*theta*E_{t+1}] / (X - gamma),      X = 1 - 2*alpha*E_{t+1}
//! E_t  = (beta + alpha*theta^2)*E_{t+1}
//!        + (gamma*pi_t - 2*theta*alpha*E_{t+1})^2 / (2*X)
//!        + gamma*((lambda+1/2)*pi_t - pi_t^2/2)
//! D_t  = D_{t+1} + E_{t+1}*omega + gamma*r - log(sqrt(X))
//! ```
//!
//! Every step requires X > 0; a violation is reported as a structured error
//! carrying the offending period. Evaluation order within a step is
//! pi -> E -> D because the E update references pi_t.

use crate::error::{Error, Result};
use crate::model::GarchParams;

/// Investor preferences: CRRA exponent, horizon and initial log wealth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preferences {
    gamma: f64,
    horizon: usize,
    initial_log_wealth: f64,
}

/// Whether the dynamic-programming solution is proved optimal for the given
/// risk aversion or only conjectured (0 < gamma < 1 is studied numerically;
/// the second-order argument needs gamma < 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Optimality {
    Proved,
    Conjectured,
}

impl Preferences {
    pub fn new(gamma: f64, horizon: usize, initial_log_wealth: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma == 0.0 || gamma >= 1.0 {
            return Err(Error::GammaOutOfRange { gamma });
        }
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        if !initial_log_wealth.is_finite() {
            return Err(Error::NonFinite { name: "initial_log_wealth" });
        }
        Ok(Preferences { gamma, horizon, initial_log_wealth })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn initial_log_wealth(&self) -> f64 {
        self.initial_log_wealth
    }

    pub fn optimality(&self) -> Optimality {
        if self.gamma < 0.0 {
            Optimality::Proved
        } else {
            Optimality::Conjectured
        }
    }

    /// Relative risk aversion 1 - gamma.
    pub fn relative_risk_aversion(&self) -> f64 {
        1.0 - self.gamma
    }
}

/// A deterministic per-period allocation, pi_0 .. pi_{T-1}, as fractions of
/// wealth in the risky asset. Unconstrained in sign and leverage.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategySchedule {
    weights: Vec<f64>,
}

impl StrategySchedule {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidHorizon);
        }
        if let Some(t) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFiniteWeight { t });
        }
        Ok(StrategySchedule { weights })
    }

    pub fn constant(weight: f64, horizon: usize) -> Result<Self> {
        Self::new(vec![weight; horizon])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, t: usize) -> f64 {
        self.weights[t]
    }
}

/// Per-period value-function coefficients D and E together with the strategy
/// schedule they induce. `E[T] = D[T] = 0` always; `admissible[t]` records
/// 1 - 2*alpha*E[t] > 0 (all true for a table returned by the solvers).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    gamma: f64,
    d: Vec<f64>,
    e: Vec<f64>,
    pi: StrategySchedule,
    admissible: Vec<bool>,
}

impl CoefficientTable {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Horizon T in periods.
    pub fn horizon(&self) -> usize {
        self.pi.len()
    }

    /// Value-function intercepts, length T+1.
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Variance loadings, length T+1.
    pub fn e(&self) -> &[f64] {
        &self.e
    }

    pub fn schedule(&self) -> &StrategySchedule {
        &self.pi
    }

    pub fn admissible_flags(&self) -> &[bool] {
        &self.admissible
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible.iter().all(|&a| a)
    }

    /// Expected utility Phi_t(w, h_next) = (1/gamma) exp{D[t] + gamma*w + E[t]*h_next}.
    /// Negative for gamma < 0.
    pub fn value_at(&self, t: usize, log_wealth: f64, h_next: f64) -> f64 {
        (self.d[t] + self.gamma * log_wealth + self.e[t] * h_next).exp() / self.gamma
    }
}

/// One backward step of the shared D/E recursion at a fixed allocation.
/// Returns (d, e) at t given the coefficients at t+1. The caller has already
/// checked x = 1 - 2*alpha*e_next > 0.
#[inline]
fn step_back(params: &GarchParams, gamma: f64, pi: f64, d_next: f64, e_next: f64, x: f64) -> (f64, f64) {
    let lbar = params.lambda_bar();
    let quad = gamma * pi - 2.0 * params.theta * params.alpha * e_next;
    let e = params.persistence() * e_next + quad * quad / (2.0 * x)
        + gamma * (lbar * pi - 0.5 * pi * pi);
    // log(sqrt(x)) as 0.5*log1p(-2*alpha*E) for accuracy at small alpha*E
    let d = d_next + e_next * params.omega + gamma * params.r
        - 0.5 * (-2.0 * params.alpha * e_next).ln_1p();
    (d, e)
}

/// Optimal allocation for the coming period given the variance loading at t+1.
#[inline]
fn optimal_weight(params: &GarchParams, gamma: f64, e_next: f64, x: f64) -> f64 {
    let lbar = params.lambda_bar();
    (lbar * x - 2.0 * params.alpha * params.theta * e_next) / (x - gamma)
}

fn solve_with(
    params: &GarchParams,
    prefs: &Preferences,
    mut weight_at: impl FnMut(usize, f64, f64) -> f64,
) -> Result<CoefficientTable> {
    params.validate()?;
    let t_max = prefs.horizon();
    let gamma = prefs.gamma();
    let mut d = vec![0.0; t_max + 1];
    let mut e = vec![0.0; t_max + 1];
    let mut pi = vec![0.0; t_max];
    for t in (0..t_max).rev() {
        let x = 1.0 - 2.0 * params.alpha * e[t + 1];
        if x <= 0.0 {
            return Err(Error::InadmissibleCoefficient { t: t + 1 });
        }
        let w = weight_at(t, e[t + 1], x);
        let (dt, et) = step_back(params, gamma, w, d[t + 1], e[t + 1], x);
        pi[t] = w;
        d[t] = dt;
        e[t] = et;
    }
    if 1.0 - 2.0 * params.alpha * e[0] <= 0.0 {
        return Err(Error::InadmissibleCoefficient { t: 0 });
    }
    let admissible = e.iter().map(|&ei| 1.0 - 2.0 * params.alpha * ei > 0.0).collect();
    Ok(CoefficientTable { gamma, d, e, pi: StrategySchedule { weights: pi }, admissible })
}

/// Solves the dynamic program backward from T, maximizing each period. The
/// resulting schedule is deterministic: it depends on neither wealth nor the
/// realized variance path.
pub fn solve_optimal(params: &GarchParams, prefs: &Preferences) -> Result<CoefficientTable> {
    let gamma = prefs.gamma();
    solve_with(params, prefs, |_, e_next, x| optimal_weight(params, gamma, e_next, x))
}

/// Runs the same recursion with the allocation pinned to `schedule` (no
/// maximization), yielding the suboptimal coefficients D^s, E^s.
pub fn evaluate_suboptimal(
    params: &GarchParams,
    prefs: &Preferences,
    schedule: &StrategySchedule,
) -> Result<CoefficientTable> {
    if schedule.len() != prefs.horizon() {
        return Err(Error::MismatchedHorizon { expected: prefs.horizon(), got: schedule.len() });
    }
    solve_with(params, prefs, |t, _, _| schedule.get(t))
}

/// Myopic and hedging components of an allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    /// (lambda + 1/2) / (1 - gamma): the single-period (Merton) demand.
    pub myopic: f64,
    /// Intertemporal demand against stochastic variance; vanishes when
    /// alpha = 0 or one period remains.
    pub hedging: f64,
}

/// Splits the optimal weight implied by `e_next` into myopic + hedging parts.
/// The two components sum to the Theorem's pi* identically.
pub fn decompose(params: &GarchParams, gamma: f64, e_next: f64) -> Result<Decomposition> {
    let x = 1.0 - 2.0 * params.alpha * e_next;
    if x <= 0.0 {
        return Err(Error::InadmissibleCoefficient { t: 0 });
    }
    let lbar = params.lambda_bar();
    let one_minus_gamma = 1.0 - gamma;
    let myopic = lbar / one_minus_gamma;
    let hedging = (one_minus_gamma * (params.theta + lbar) - lbar) * 2.0 * params.alpha * e_next
        / (one_minus_gamma * (gamma - x));
    // e_next = 0 yields a signed zero; normalize it
    Ok(Decomposition { myopic, hedging: hedging + 0.0 })
}

/// Wealth-equivalent loss of a suboptimal strategy: the fraction of initial
/// capital an optimal investor could forgo and still match the suboptimal
/// expected utility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelReport {
    /// L_t in [-inf, 1); zero when the strategies coincide.
    pub loss: f64,
    pub d_sub: f64,
    pub e_sub: f64,
    pub d_opt: f64,
    pub e_opt: f64,
    pub h_next: f64,
}

/// L_t = 1 - exp{ (1/gamma) * [(D^s_t - D_t) + (E^s_t - E_t)*h_next] }.
/// Nonnegative whenever `sub` is genuinely admissible (Phi^s <= Phi).
pub fn wealth_equivalent_loss(
    opt: &CoefficientTable,
    sub: &CoefficientTable,
    t: usize,
    h_next: f64,
) -> Result<WelReport> {
    if opt.horizon() != sub.horizon() {
        return Err(Error::MismatchedHorizon { expected: opt.horizon(), got: sub.horizon() });
    }
    debug_assert_eq!(opt.gamma(), sub.gamma());
    let gamma = opt.gamma();
    let d_opt = opt.d()[t];
    let e_opt = opt.e()[t];
    let d_sub = sub.d()[t];
    let e_sub = sub.e()[t];
    let loss = 1.0 - (((d_sub - d_opt) + (e_sub - e_opt) * h_next) / gamma).exp();
    Ok(WelReport { loss, d_sub, e_sub, d_opt, e_opt, h_next })
}

/// True iff E[t] <= E[t+1] for all t. Together with gamma < 0 this guarantees
/// the admissibility condition at every period.
pub fn check_monotone_e(table: &CoefficientTable) -> bool {
    table.e().windows(2).all(|w| w[0] <= w[1])
}
