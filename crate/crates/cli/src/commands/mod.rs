pub mod converge;
pub mod mgf;
pub mod optimize;
pub mod simulate;
pub mod wel;

use garch_portfolio::limits::{heston_schedule, merton_schedule};
use garch_portfolio::model::GarchParams;
use garch_portfolio::recursion::{solve_optimal, Optimality, Preferences, StrategySchedule};

use crate::artifact::CsvArtifact;
use crate::config::{RunConfig, ScheduleChoice};
use crate::AppError;

pub fn note_written(artifact: &CsvArtifact) {
    eprintln!("wrote {}", artifact.path.display());
}

/// Resolves a named schedule for the configured model and preferences.
pub fn resolve_schedule(
    cfg: &RunConfig,
    params: &GarchParams,
    prefs: &Preferences,
) -> Result<StrategySchedule, AppError> {
    match cfg.schedule {
        ScheduleChoice::Optimal => Ok(solve_optimal(params, prefs)?.schedule().clone()),
        ScheduleChoice::Merton => Ok(merton_schedule(params, prefs).pi),
        ScheduleChoice::Heston => Ok(heston_schedule(params, prefs)?.pi),
        ScheduleChoice::Zero => Ok(StrategySchedule::constant(0.0, prefs.horizon())
            .expect("positive horizon")),
    }
}

/// Validates model and preferences up front, warning once when the risk
/// aversion lies in the numerically-studied (0,1) band where optimality is
/// conjectured rather than proved.
pub fn validated_inputs(cfg: &RunConfig) -> Result<(GarchParams, Preferences), AppError> {
    let params = cfg.params();
    params.validate()?;
    let prefs = cfg.preferences()?;
    if prefs.optimality() == Optimality::Conjectured {
        eprintln!(
            "warning: gamma = {} lies in (0,1); the solution is conjectured optimal only",
            prefs.gamma()
        );
    }
    Ok((params, prefs))
}

/// Short status token for per-row error reporting in sweep CSVs.
pub fn status_code(e: &garch_portfolio::Error) -> &'static str {
    use garch_portfolio::Error::*;
    match e {
        InadmissibleCoefficient { .. } => "inadmissible",
        MgfDivergent { .. } => "divergent",
        NonStationary { .. } => "nonstationary",
        _ => "invalid",
    }
}

/// Evenly spaced grid including both endpoints.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}
