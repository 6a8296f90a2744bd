use std::path::Path;

use garch_portfolio::simulate::{
    maintenance_cashflows, return_statistics, simulate_paths, terminal_wealth_gap, ReturnStats,
    WealthProcess,
};
use garch_portfolio::stats::{DistSummary, Moments};

use crate::artifact::write_csv;
use crate::config::{fmt_f64, RunConfig};
use crate::AppError;

use super::{note_written, resolve_schedule, validated_inputs};

/// Runs the Monte Carlo engine under the configured schedule and writes four
/// CSVs: per-period path summaries, terminal-gap quantiles, cash-flow
/// quantiles and return statistics.
pub fn run(cfg: &RunConfig, out: &Path) -> Result<(), AppError> {
    let (params, prefs) = validated_inputs(cfg)?;
    let schedule = resolve_schedule(cfg, &params, &prefs)?;
    let sim = cfg.sim_config();
    sim.validate()?;
    let paths = simulate_paths(&params, &sim, &schedule)?;

    let mut metadata = vec![("command".to_string(), "simulate".to_string())];
    metadata.extend(cfg.metadata());

    // per-period summary of the simulated state
    let mut summary_rows = Vec::with_capacity(cfg.horizon + 1);
    for t in 0..=cfg.horizon {
        let mut w = Moments::new();
        let mut v = Moments::new();
        let mut h = Moments::new();
        let mut x = Moments::new();
        for i in 0..paths.n_paths() {
            w.push(paths.log_wealth_proxy.get(i, t));
            v.push(paths.wealth_exact.get(i, t));
            h.push(paths.variance.get(i, t));
            x.push(paths.log_price.get(i, t));
        }
        summary_rows.push(vec![
            t.to_string(),
            fmt_f64(w.mean()),
            fmt_f64(w.stdev()),
            fmt_f64(v.mean()),
            fmt_f64(h.mean()),
            fmt_f64(x.mean()),
        ]);
    }
    note_written(&write_csv(
        out,
        "simulate_paths_summary.csv",
        &metadata,
        &["t", "mean_log_wealth_proxy", "std_log_wealth_proxy", "mean_wealth_exact", "mean_variance", "mean_log_price"],
        &summary_rows,
    )?);

    // terminal-wealth gap distribution
    let gap = terminal_wealth_gap(&paths);
    let mut gap_rows = summary_to_rows(&gap.summary);
    gap_rows.push(vec!["excluded_paths".into(), gap.excluded.to_string()]);
    note_written(&write_csv(out, "simulate_gap.csv", &metadata, &["statistic", "value"], &gap_rows)?);

    // maintenance cash flows, daily and cumulative
    let cash = maintenance_cashflows(&paths);
    let mut cash_rows: Vec<Vec<String>> = Vec::new();
    for (scope, summary) in [("daily", &cash.daily), ("cumulative", &cash.cumulative)] {
        for row in summary_to_rows(summary) {
            cash_rows.push(vec![scope.to_string(), row[0].clone(), row[1].clone()]);
        }
    }
    note_written(&write_csv(out, "simulate_cashflows.csv", &metadata, &["scope", "statistic", "value"], &cash_rows)?);

    // annualized return statistics for both wealth processes
    let stats_rows: Vec<Vec<String>> = [
        ("proxy", return_statistics(&paths, &prefs, WealthProcess::Proxy)),
        ("exact", return_statistics(&paths, &prefs, WealthProcess::Exact)),
    ]
    .iter()
    .map(|(name, s): &(&str, ReturnStats)| {
        vec![
            name.to_string(),
            fmt_f64(s.mean),
            fmt_f64(s.stdev),
            fmt_f64(s.skewness),
            fmt_f64(s.kurtosis),
            fmt_f64(s.sharpe_ratio),
            fmt_f64(s.expected_utility),
            s.n_used.to_string(),
        ]
    })
    .collect();
    note_written(&write_csv(
        out,
        "simulate_returns.csv",
        &metadata,
        &["process", "mean", "stdev", "skewness", "kurtosis", "sharpe_ratio", "expected_utility", "n_used"],
        &stats_rows,
    )?);
    Ok(())
}

fn summary_to_rows(s: &DistSummary) -> Vec<Vec<String>> {
    let mut rows = vec![
        vec!["n".into(), s.n.to_string()],
        vec!["mean".into(), fmt_f64(s.mean)],
        vec!["stdev".into(), fmt_f64(s.stdev)],
        vec!["skewness".into(), fmt_f64(s.skewness)],
        vec!["kurtosis".into(), fmt_f64(s.kurtosis)],
    ];
    for &(q, v) in &s.quantiles {
        rows.push(vec![format!("q{:02}", (q * 100.0).round() as u32), fmt_f64(v)]);
    }
    rows
}
