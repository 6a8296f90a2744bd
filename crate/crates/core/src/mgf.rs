//! Affine moment-generating-function recursions for the log-wealth process
//! under any admissible deterministic schedule.
//!
//! The log wealth driven by a deterministic schedule is itself an affine
//! GARCH process; its conditional m.g.f. is exponential-affine,
//!
//! ```text
//! Psi^{(t)}(u) = E_t[e^{u W_T}] = exp{ u*W_t + A_t + B_t*h_{t+1} }
//! A_t = A_{t+1} + u*r + B_{t+1}*omega - log(sqrt(1 - 2*alpha*B_{t+1}))
//! B_t = u*((lambda+1/2)*pi_t - pi_t^2/2) + (beta + alpha*theta^2)*B_{t+1}
//!       + (u*pi_t - 2*alpha*theta*B_{t+1})^2 / (2*(1 - 2*alpha*B_{t+1}))
//! ```
//!
//! with A_T = B_T = 0, defined while 1 - 2*alpha*B > 0 at every step. Setting
//! pi = 1 everywhere recovers the m.g.f. recursion of the log price itself.

use crate::error::{Error, Result};
use crate::model::GarchParams;
use crate::recursion::{Preferences, StrategySchedule};

/// A and B coefficient vectors (length T+1) for a fixed transform argument u.
#[derive(Debug, Clone, PartialEq)]
pub struct MgfCoefficients {
    u: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    schedule: StrategySchedule,
}

impl MgfCoefficients {
    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn schedule(&self) -> &StrategySchedule {
        &self.schedule
    }

    pub fn horizon(&self) -> usize {
        self.schedule.len()
    }

    /// Psi^{(t)}(u) evaluated at log wealth `w` and next-period variance `h_next`.
    pub fn value(&self, t: usize, w: f64, h_next: f64) -> f64 {
        (self.u * w + self.a[t] + self.b[t] * h_next).exp()
    }
}

/// Backward recursion for the m.g.f. coefficients of W_T under `schedule`.
/// Errors with the violating period if the m.g.f. does not exist at this u.
pub fn mgf_coefficients(
    params: &GarchParams,
    schedule: &StrategySchedule,
    u: f64,
) -> Result<MgfCoefficients> {
    params.validate()?;
    let t_max = schedule.len();
    let lbar = params.lambda_bar();
    let persistence = params.persistence();
    let mut a = vec![0.0; t_max + 1];
    let mut b = vec![0.0; t_max + 1];
    for t in (0..t_max).rev() {
        let x = 1.0 - 2.0 * params.alpha * b[t + 1];
        if x <= 0.0 {
            return Err(Error::MgfDivergent { t: t + 1 });
        }
        let pi = schedule.get(t);
        let quad = u * pi - 2.0 * params.alpha * params.theta * b[t + 1];
        b[t] = u * (lbar * pi - 0.5 * pi * pi) + persistence * b[t + 1] + quad * quad / (2.0 * x);
        a[t] = a[t + 1] + u * params.r + b[t + 1] * params.omega
            - 0.5 * (-2.0 * params.alpha * b[t + 1]).ln_1p();
    }
    if 1.0 - 2.0 * params.alpha * b[0] <= 0.0 {
        return Err(Error::MgfDivergent { t: 0 });
    }
    Ok(MgfCoefficients { u, a, b, schedule: schedule.clone() })
}

/// Closed-form multi-period expectation of the log wealth at period `t`:
///
/// ```text
/// E_0[W_t] = w0 + r*t + sum_{j=0}^{t-1} ((lambda+1/2)*pi_j - pi_j^2/2) * E[h_j]
/// ```
///
/// where E[h_j] is the analytic variance forecast started at `h0`, the known
/// variance of the first period.
pub fn expected_log_wealth(
    params: &GarchParams,
    prefs: &Preferences,
    schedule: &StrategySchedule,
    h0: f64,
    t: usize,
) -> f64 {
    let lbar = params.lambda_bar();
    let mut acc = prefs.initial_log_wealth() + params.r * t as f64;
    for j in 0..t {
        let pi = schedule.get(j);
        acc += (lbar * pi - 0.5 * pi * pi) * params.expected_variance(h0, j);
    }
    acc
}

// Step 1e-2 keeps the third/fourth stencils far above the f64 noise floor
// (at 1e-4 the fourth difference of K, whose values are ~|u|*E[W_T], is pure
// cancellation noise) while the truncation error stays ~1e-10 on realistic
// wealth distributions.
const CUMULANT_STEP: f64 = 1e-2;
const DEGENERATE_VARIANCE: f64 = 1e-9;

/// First `order` cumulants of W_T given state (w, h_next) at period `t`,
/// extracted by 5-point central differences of the cumulant generating
/// function K(u) = log Psi(u). Errors if the m.g.f. does not exist at any
/// stencil node.
pub fn cumulants_from_mgf(
    params: &GarchParams,
    schedule: &StrategySchedule,
    t: usize,
    w: f64,
    h_next: f64,
    order: usize,
) -> Result<Vec<f64>> {
    if order == 0 || order > 4 {
        return Err(Error::InvalidOrder { order });
    }
    let d = CUMULANT_STEP;
    let k = |u: f64| -> Result<f64> {
        if u == 0.0 {
            return Ok(0.0);
        }
        let coeffs = mgf_coefficients(params, schedule, u)?;
        Ok(u * w + coeffs.a()[t] + coeffs.b()[t] * h_next)
    };
    let k_m2 = k(-2.0 * d)?;
    let k_m1 = k(-d)?;
    let k_p1 = k(d)?;
    let k_p2 = k(2.0 * d)?;
    let mut out = Vec::with_capacity(order);
    // 5-point stencils for the first four derivatives at 0 (K(0) = 0)
    out.push((-k_p2 + 8.0 * k_p1 - 8.0 * k_m1 + k_m2) / (12.0 * d));
    if order >= 2 {
        out.push((-k_p2 + 16.0 * k_p1 + 16.0 * k_m1 - k_m2) / (12.0 * d * d));
    }
    if order >= 3 {
        out.push((k_p2 - 2.0 * k_p1 + 2.0 * k_m1 - k_m2) / (2.0 * d * d * d));
    }
    if order >= 4 {
        out.push((k_p2 - 4.0 * k_p1 - 4.0 * k_m1 + k_m2) / (d * d * d * d));
    }
    Ok(out)
}

/// Mean, variance, skewness and excess kurtosis of W_T implied by the m.g.f.
/// Skewness and kurtosis are undefined when the wealth is (numerically)
/// deterministic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WealthMoments {
    pub mean: f64,
    pub variance: f64,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

pub fn wealth_moments(
    params: &GarchParams,
    schedule: &StrategySchedule,
    t: usize,
    w: f64,
    h_next: f64,
) -> Result<WealthMoments> {
    let k = cumulants_from_mgf(params, schedule, t, w, h_next, 4)?;
    let variance = k[1];
    let (skewness, excess_kurtosis) = if variance > DEGENERATE_VARIANCE {
        (Some(k[2] / variance.powf(1.5)), Some(k[3] / (variance * variance)))
    } else {
        (None, None)
    };
    Ok(WealthMoments { mean: k[0], variance, skewness, excess_kurtosis })
}
