use thiserror::Error;

/// Errors produced by model validation, the Bellman recursions and the
/// simulation engine.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// The stationarity condition beta + alpha*theta^2 < 1 is violated.
    #[error("non-stationary parameters: beta + alpha*theta^2 = {persistence} >= 1")]
    NonStationary { persistence: f64 },

    /// omega, alpha or beta is negative.
    #[error("coefficient {name} must be nonnegative, got {value}")]
    NegativeCoefficient { name: &'static str, value: f64 },

    /// A parameter is NaN or infinite.
    #[error("parameter {name} must be finite")]
    NonFinite { name: &'static str },

    /// Risk aversion outside the supported domain.
    #[error("gamma must be nonzero and below 1, got {gamma}")]
    GammaOutOfRange { gamma: f64 },

    /// Horizon of zero periods.
    #[error("horizon must be at least one period")]
    InvalidHorizon,

    /// A strategy weight is NaN or infinite.
    #[error("strategy weight at period {t} must be finite")]
    NonFiniteWeight { t: usize },

    /// The well-definedness condition 1 - 2*alpha*E > 0 failed during a
    /// backward recursion. `t` is the period whose coefficient violates it.
    #[error("inadmissible coefficient at period {t}: 1 - 2*alpha*E <= 0")]
    InadmissibleCoefficient { t: usize },

    /// The moment generating function does not exist at the requested
    /// transform argument (1 - 2*alpha*B <= 0 at period `t`).
    #[error("moment generating function divergent at period {t}: 1 - 2*alpha*B <= 0")]
    MgfDivergent { t: usize },

    /// Two coefficient tables or a schedule/preferences pair disagree on T.
    #[error("mismatched horizon: expected {expected} periods, got {got}")]
    MismatchedHorizon { expected: usize, got: usize },

    /// Period length outside (0, 1] days.
    #[error("delta must lie in (0, 1] days, got {delta}")]
    InvalidDelta { delta: f64 },

    /// A simulation configuration field is out of range.
    #[error("invalid simulation config: {reason}")]
    InvalidSimConfig { reason: &'static str },

    /// Cumulant order outside 1..=4.
    #[error("cumulant order must be between 1 and 4, got {order}")]
    InvalidOrder { order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
