use std::path::Path;

use garch_portfolio::limits::{heston_schedule, merton_schedule};
use garch_portfolio::model::GarchParams;
use garch_portfolio::recursion::{
    evaluate_suboptimal, solve_optimal, wealth_equivalent_loss, Preferences,
};

use crate::artifact::write_csv;
use crate::config::{fmt_f64, RunConfig, SweepKey};
use crate::AppError;

use super::{linspace, note_written, status_code, validated_inputs};

// Persistence is capped strictly below one when sweeping alpha/beta/theta.
const PERSISTENCE_CAP: f64 = 1.0 - 1e-6;

/// Writes `wel.csv`: the wealth-equivalent loss of the Merton and Heston
/// strategies against the optimum, swept over gamma or one model parameter
/// (50%-200% of its base value, capped to keep the model stationary). Rows
/// that fail validation or admissibility carry a status token instead of
/// being dropped.
pub fn run(cfg: &RunConfig, out: &Path) -> Result<(), AppError> {
    let (base, base_prefs) = validated_inputs(cfg)?;
    let h_next = cfg.resolved_h_next();

    let values = sweep_grid(cfg, &base)?;
    let mut rows = Vec::with_capacity(values.len());
    for &value in &values {
        let (params, gamma) = apply_sweep(&base, cfg.sweep, value, base_prefs.gamma());
        let row = match losses_at(&params, gamma, base_prefs.horizon(), base_prefs.initial_log_wealth(), h_next) {
            Ok((l_merton, l_heston)) => vec![
                cfg.sweep.to_string(),
                fmt_f64(value),
                fmt_f64(l_merton),
                fmt_f64(l_heston),
                "ok".into(),
            ],
            Err(e) => vec![
                cfg.sweep.to_string(),
                fmt_f64(value),
                String::new(),
                String::new(),
                status_code(&e).into(),
            ],
        };
        rows.push(row);
    }

    let mut metadata = vec![("command".to_string(), "wel".to_string())];
    metadata.extend(cfg.metadata());
    metadata.push(("sweep".into(), cfg.sweep.to_string()));
    metadata.push(("sweep_points".into(), cfg.sweep_points.to_string()));
    metadata.push(("gamma_min".into(), fmt_f64(cfg.gamma_min)));
    metadata.push(("gamma_max".into(), fmt_f64(cfg.gamma_max)));
    metadata.push(("h_next".into(), fmt_f64(h_next)));
    note_written(&write_csv(
        out,
        "wel.csv",
        &metadata,
        &["sweep", "value", "l_merton", "l_heston", "status"],
        &rows,
    )?);
    Ok(())
}

fn sweep_grid(cfg: &RunConfig, base: &GarchParams) -> Result<Vec<f64>, AppError> {
    if cfg.sweep_points == 0 {
        return Err(AppError::config("sweep_points must be at least 1"));
    }
    let grid = match cfg.sweep {
        SweepKey::Gamma => linspace(cfg.gamma_min, cfg.gamma_max, cfg.sweep_points),
        key => {
            let base_value = match key {
                SweepKey::Alpha => base.alpha,
                SweepKey::Beta => base.beta,
                SweepKey::Theta => base.theta,
                SweepKey::Omega => base.omega,
                SweepKey::Lambda => base.lambda,
                SweepKey::R => base.r,
                SweepKey::Gamma => unreachable!(),
            };
            let hi = 2.0 * base_value;
            let hi = match key {
                // stationarity cap beta + alpha*theta^2 < 1
                SweepKey::Alpha if base.theta != 0.0 => {
                    hi.min((PERSISTENCE_CAP - base.beta) / (base.theta * base.theta))
                }
                SweepKey::Beta => hi.min(PERSISTENCE_CAP - base.alpha * base.theta * base.theta),
                SweepKey::Theta if base.alpha > 0.0 => {
                    hi.min(((PERSISTENCE_CAP - base.beta) / base.alpha).sqrt())
                }
                _ => hi,
            };
            linspace(0.5 * base_value, hi, cfg.sweep_points)
        }
    };
    Ok(grid)
}

fn apply_sweep(base: &GarchParams, key: SweepKey, value: f64, gamma: f64) -> (GarchParams, f64) {
    let mut p = *base;
    let mut g = gamma;
    match key {
        SweepKey::Gamma => g = value,
        SweepKey::Alpha => p.alpha = value,
        SweepKey::Beta => p.beta = value,
        SweepKey::Theta => p.theta = value,
        SweepKey::Omega => p.omega = value,
        SweepKey::Lambda => p.lambda = value,
        SweepKey::R => p.r = value,
    }
    (p, g)
}

fn losses_at(
    params: &GarchParams,
    gamma: f64,
    horizon: usize,
    w0: f64,
    h_next: f64,
) -> Result<(f64, f64), garch_portfolio::Error> {
    params.validate()?;
    let prefs = Preferences::new(gamma, horizon, w0)?;
    let opt = solve_optimal(params, &prefs)?;
    let merton = evaluate_suboptimal(params, &prefs, &merton_schedule(params, &prefs).pi)?;
    let heston = evaluate_suboptimal(params, &prefs, &heston_schedule(params, &prefs)?.pi)?;
    let l_merton = wealth_equivalent_loss(&opt, &merton, 0, h_next)?.loss;
    let l_heston = wealth_equivalent_loss(&opt, &heston, 0, h_next)?.loss;
    Ok((l_merton, l_heston))
}
