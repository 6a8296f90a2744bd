//! Closed-form dynamic portfolio optimization under the Heston-Nandi
//! GARCH(1,1) model for a CRRA investor.
//!
//! The crate provides:
//!
//! - [`model`]: the HN-GARCH parameter set, validation and analytic variance
//!   moments;
//! - [`recursion`]: the backward dynamic-programming recursions for the
//!   value function, the optimal allocation and its myopic/hedging split,
//!   suboptimal-strategy evaluation and wealth-equivalent loss;
//! - [`mgf`]: exponential-affine moment-generating-function recursions for
//!   the log-wealth process, closed-form wealth expectations and
//!   cumulant-based moments;
//! - [`simulate`]: a seeded, thread-parallel Monte Carlo engine tracking the
//!   exact and approximated self-financing wealth from common shocks;
//! - [`limits`]: period-length scaling, Merton/Heston baseline schedules and
//!   the convergence study toward the continuous-time solution.
//!
//! All types are immutable values and every operation is a pure function,
//! safe to call concurrently.

pub mod error;
pub mod limits;
pub mod mgf;
pub mod model;
pub mod recursion;
pub mod rng;
pub mod simulate;
pub mod stats;

pub use error::{Error, Result};
pub use model::{GarchParams, VarianceState};
pub use recursion::{
    check_monotone_e, decompose, evaluate_suboptimal, solve_optimal, wealth_equivalent_loss,
    CoefficientTable, Decomposition, Optimality, Preferences, StrategySchedule, WelReport,
};

/// Trading periods per year used for annualization.
pub const PERIODS_PER_YEAR: f64 = 252.0;
