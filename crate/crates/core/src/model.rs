//! Heston-Nandi GARCH(1,1) model definition and analytic variance moments.
//!
//! The log spot price X and its conditional variance h evolve as
//!
//! ```text
//! X_t = X_{t-1} + r + lambda*h_t + sqrt(h_t)*z_t,      z_t ~ N(0,1)
//! h_t = omega + beta*h_{t-1} + alpha*(z_{t-1} - theta*sqrt(h_{t-1}))^2
//! ```
//!
//! with stationarity requiring beta + alpha*theta^2 < 1. All rates and
//! variances are per period; annualization is a presentation concern.

use crate::error::{Error, Result};

/// Heston-Nandi GARCH(1,1) coefficients plus the per-period risk-free rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GarchParams {
    /// Variance intercept (per-period variance units).
    pub omega: f64,
    /// Variance persistence.
    pub beta: f64,
    /// Shock loading (per-period variance units).
    pub alpha: f64,
    /// Asymmetry / leverage (inverse-volatility units).
    pub theta: f64,
    /// Risk premium per unit of variance.
    pub lambda: f64,
    /// Continuously compounded per-period risk-free rate.
    pub r: f64,
}

impl GarchParams {
    /// Daily S&P 500 estimates from Christoffersen et al. (2006), with a
    /// risk-free rate of 1% per year at 252 trading days.
    pub fn christoffersen() -> Self {
        GarchParams {
            omega: 3.038e-9,
            beta: 0.9026,
            alpha: 3.660e-6,
            theta: 128.4,
            lambda: 2.772,
            r: 0.01 / 252.0,
        }
    }

    /// Variance persistence beta + alpha*theta^2, the geometric decay rate of
    /// conditional-variance forecasts.
    pub fn persistence(&self) -> f64 {
        self.beta + self.alpha * self.theta * self.theta
    }

    /// Risk premium on the simple return, lambda + 1/2.
    pub fn lambda_bar(&self) -> f64 {
        self.lambda + 0.5
    }

    /// Checks nonnegativity of omega/alpha/beta, finiteness of every field
    /// and strict stationarity. Returns the parameters untouched on success.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("omega", self.omega),
            ("beta", self.beta),
            ("alpha", self.alpha),
            ("theta", self.theta),
            ("lambda", self.lambda),
            ("r", self.r),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name });
            }
        }
        for (name, value) in [("omega", self.omega), ("beta", self.beta), ("alpha", self.alpha)] {
            if value < 0.0 {
                return Err(Error::NegativeCoefficient { name, value });
            }
        }
        let persistence = self.persistence();
        if persistence >= 1.0 {
            return Err(Error::NonStationary { persistence });
        }
        Ok(())
    }

    /// Long-run average variance h_bar = (alpha + omega) / (1 - beta - alpha*theta^2).
    ///
    /// Requires stationary parameters.
    pub fn long_run_variance(&self) -> f64 {
        (self.alpha + self.omega) / (1.0 - self.persistence())
    }

    /// Multi-period variance expectation E[h after t steps | h now = h0]:
    ///
    /// ```text
    /// (alpha + omega) * (1 - p^t) / (1 - p) + p^t * h0,   p = beta + alpha*theta^2
    /// ```
    ///
    /// satisfying the one-step recursion E[h_t] = alpha + omega + p*E[h_{t-1}].
    pub fn expected_variance(&self, h0: f64, t: usize) -> f64 {
        let p = self.persistence();
        let pt = p.powi(t as i32);
        (self.alpha + self.omega) * (1.0 - pt) / (1.0 - p) + pt * h0
    }

    /// Conditional covariance between next-period variance and the log price,
    /// Cov_{t-1}[h_{t+1}, X_t] = -2*alpha*theta*h_t.
    pub fn variance_log_price_covariance(&self, h: f64) -> f64 {
        -2.0 * self.alpha * self.theta * h
    }

    /// One step of the variance recursion, h' = omega + beta*h + alpha*(z - theta*sqrt(h))^2.
    pub fn next_variance(&self, h: f64, z: f64) -> f64 {
        let innov = z - self.theta * h.sqrt();
        self.omega + self.beta * h + self.alpha * innov * innov
    }
}

/// A validated, strictly positive conditional variance. Used at input
/// boundaries; computational kernels work on raw f64 for ergonomics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceState(f64);

impl VarianceState {
    pub fn new(h: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::NonFinite { name: "h" });
        }
        if h <= 0.0 {
            return Err(Error::InvalidSimConfig { reason: "variance must be strictly positive" });
        }
        Ok(VarianceState(h))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn christoffersen_set_is_stationary() {
        let p = GarchParams::christoffersen();
        p.validate().unwrap();
        assert_relative_eq!(p.persistence(), 0.962941, epsilon = 1e-6);
    }

    #[test]
    fn alpha_zero_persistence_is_beta() {
        let p = GarchParams { alpha: 0.0, beta: 0.99, theta: 500.0, ..GarchParams::christoffersen() };
        p.validate().unwrap();
        assert_eq!(p.persistence(), 0.99);
    }

    #[test]
    fn high_beta_is_non_stationary() {
        let p = GarchParams { beta: 0.95, ..GarchParams::christoffersen() };
        match p.validate() {
            Err(Error::NonStationary { persistence }) => {
                assert_relative_eq!(persistence, 1.0103408096, epsilon = 1e-9);
            }
            other => panic!("expected NonStationary, got {other:?}"),
        }
    }

    #[test]
    fn negative_coefficients_rejected() {
        let p = GarchParams { alpha: -1e-9, ..GarchParams::christoffersen() };
        assert!(matches!(p.validate(), Err(Error::NegativeCoefficient { name: "alpha", .. })));
        let p = GarchParams { omega: -1.0, ..GarchParams::christoffersen() };
        assert!(matches!(p.validate(), Err(Error::NegativeCoefficient { name: "omega", .. })));
        let p = GarchParams { theta: f64::NAN, ..GarchParams::christoffersen() };
        assert!(matches!(p.validate(), Err(Error::NonFinite { name: "theta" })));
    }

    #[test]
    fn long_run_variance_matches_reported_volatility() {
        let p = GarchParams::christoffersen();
        let hbar = p.long_run_variance();
        assert_relative_eq!(hbar, 9.884290402631123e-5, epsilon = 1e-18, max_relative = 1e-12);
        assert_relative_eq!((252.0 * hbar).sqrt(), 0.1578, epsilon = 2e-4);
    }

    #[test]
    fn long_run_variance_degenerate_cases() {
        let p = GarchParams { omega: 0.0, alpha: 0.0, ..GarchParams::christoffersen() };
        assert_eq!(p.long_run_variance(), 0.0);
        let p = GarchParams {
            alpha: 1e-6,
            omega: 0.0,
            beta: 0.9,
            theta: 0.0,
            ..GarchParams::christoffersen()
        };
        assert_relative_eq!(p.long_run_variance(), 1e-5, max_relative = 1e-12);
    }

    #[test]
    fn expected_variance_anchors() {
        let p = GarchParams::christoffersen();
        let hbar = p.long_run_variance();
        // t = 0 is the empty product.
        assert_eq!(p.expected_variance(2e-4, 0), 2e-4);
        // frozen from direct evaluation
        assert_relative_eq!(p.expected_variance(2e-4, 5), 1.8259473608692222e-4, max_relative = 1e-12);
        // h_bar is the fixed point at every t
        for t in [1, 7, 252, 5000] {
            assert_relative_eq!(p.expected_variance(hbar, t), hbar, epsilon = 1e-12 * hbar.max(1.0));
        }
        // geometric decay reaches h_bar from any start
        assert!((p.expected_variance(5e-3, 2000) - hbar).abs() < 1e-12);
    }

    #[test]
    fn expected_variance_one_step_recursion() {
        let p = GarchParams::christoffersen();
        let h0 = 3e-4;
        for t in 1..100 {
            let lhs = p.expected_variance(h0, t);
            let rhs = p.alpha + p.omega + p.persistence() * p.expected_variance(h0, t - 1);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn covariance_anchors() {
        let p = GarchParams::christoffersen();
        let hbar = p.long_run_variance();
        assert_relative_eq!(p.variance_log_price_covariance(hbar), -9.290125937948162e-8, max_relative = 1e-12);
        let p0 = GarchParams { theta: 0.0, ..p };
        assert_eq!(p0.variance_log_price_covariance(hbar), 0.0);
        let p0 = GarchParams { alpha: 0.0, ..p };
        assert_eq!(p0.variance_log_price_covariance(0.3), 0.0);
    }

    #[test]
    fn variance_state_requires_positive() {
        assert!(VarianceState::new(1e-4).is_ok());
        assert!(VarianceState::new(0.0).is_err());
        assert!(VarianceState::new(-1.0).is_err());
        assert!(VarianceState::new(f64::NAN).is_err());
    }

    #[test]
    fn next_variance_zero_shock_recursion() {
        let p = GarchParams::christoffersen();
        let h = 2e-4;
        let expected = p.omega + p.beta * h + p.alpha * p.theta * p.theta * h;
        assert_relative_eq!(p.next_variance(h, 0.0), expected, max_relative = 1e-12);
    }
}
