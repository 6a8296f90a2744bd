//! Property tests over random stationary parameter sets.

use garch_portfolio::mgf::mgf_coefficients;
use garch_portfolio::model::GarchParams;
use garch_portfolio::recursion::{
    decompose, evaluate_suboptimal, solve_optimal, wealth_equivalent_loss, Preferences,
    StrategySchedule,
};
use proptest::prelude::*;

fn stationary_params() -> impl Strategy<Value = GarchParams> {
    (
        0.0..2e-5f64,          // alpha
        -250.0..250.0f64,      // theta
        0.0..0.95f64,          // beta headroom fraction
        0.0..1e-7f64,          // omega
        -0.5..4.0f64,          // lambda
        0.0..5e-4f64,          // r
    )
        .prop_filter_map("stationary", |(alpha, theta, beta_frac, omega, lambda, r)| {
            let ats = alpha * theta * theta;
            if ats >= 0.98 {
                return None;
            }
            let beta = beta_frac * (0.98 - ats);
            Some(GarchParams { omega, beta, alpha, theta, lambda, r })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn last_period_weight_is_merton(params in stationary_params(), gamma in -15.0..-0.05f64, horizon in 1usize..30) {
        let prefs = Preferences::new(gamma, horizon, 0.0).unwrap();
        if let Ok(table) = solve_optimal(&params, &prefs) {
            let merton = params.lambda_bar() / (1.0 - gamma);
            prop_assert!((table.schedule().get(horizon - 1) - merton).abs() < 1e-12);
            prop_assert_eq!(table.d()[horizon], 0.0);
            prop_assert_eq!(table.e()[horizon], 0.0);
        }
    }

    #[test]
    fn myopic_plus_hedging_is_the_optimal_weight(params in stationary_params(), gamma in -15.0..-0.05f64, horizon in 1usize..25) {
        let prefs = Preferences::new(gamma, horizon, 0.0).unwrap();
        if let Ok(table) = solve_optimal(&params, &prefs) {
            for t in 0..horizon {
                let dec = decompose(&params, gamma, table.e()[t + 1]).unwrap();
                prop_assert!((dec.myopic + dec.hedging - table.schedule().get(t)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn optimal_dominates_random_schedules(
        params in stationary_params(),
        gamma in -15.0..-0.05f64,
        weights in prop::collection::vec(-1.0..2.0f64, 1..25),
        h in 1e-6..5e-4f64,
        w in -0.5..0.5f64,
    ) {
        let horizon = weights.len();
        let prefs = Preferences::new(gamma, horizon, 0.0).unwrap();
        let schedule = StrategySchedule::new(weights).unwrap();
        let (opt, sub) = match (solve_optimal(&params, &prefs), evaluate_suboptimal(&params, &prefs, &schedule)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),    // inadmissible corner; dominance claim does not apply
        };
        let phi_opt = opt.value_at(0, w, h);
        let phi_sub = sub.value_at(0, w, h);
        prop_assert!(phi_opt >= phi_sub - phi_sub.abs() * 1e-12,
            "phi_opt {} < phi_sub {}", phi_opt, phi_sub);
        let wel = wealth_equivalent_loss(&opt, &sub, 0, h).unwrap();
        prop_assert!(wel.loss >= -1e-12);
    }

    #[test]
    fn schedule_is_invariant_to_r(params in stationary_params(), gamma in -15.0..-0.05f64, horizon in 1usize..25, dr in 0.0..1e-2f64) {
        let prefs = Preferences::new(gamma, horizon, 0.0).unwrap();
        let bumped = GarchParams { r: params.r + dr, ..params };
        if let (Ok(a), Ok(b)) = (solve_optimal(&params, &prefs), solve_optimal(&bumped, &prefs)) {
            prop_assert_eq!(a.schedule().weights(), b.schedule().weights());
        }
    }

    #[test]
    fn mgf_is_one_at_zero(params in stationary_params(), weights in prop::collection::vec(-1.0..2.0f64, 1..25), wh in -0.5..0.5f64, h in 1e-6..5e-4f64) {
        let schedule = StrategySchedule::new(weights).unwrap();
        let coeffs = mgf_coefficients(&params, &schedule, 0.0).unwrap();
        prop_assert_eq!(coeffs.value(0, wh, h), 1.0);
    }

    #[test]
    fn suboptimal_recursion_fixed_at_the_optimum_agrees(params in stationary_params(), gamma in -15.0..-0.05f64, horizon in 1usize..25) {
        let prefs = Preferences::new(gamma, horizon, 0.0).unwrap();
        if let Ok(opt) = solve_optimal(&params, &prefs) {
            let again = evaluate_suboptimal(&params, &prefs, opt.schedule()).unwrap();
            for t in 0..=horizon {
                prop_assert!((again.d()[t] - opt.d()[t]).abs() <= 1e-12 * opt.d()[t].abs().max(1.0));
                prop_assert!((again.e()[t] - opt.e()[t]).abs() <= 1e-12 * opt.e()[t].abs().max(1.0));
            }
        }
    }
}
