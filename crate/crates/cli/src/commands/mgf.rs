use std::path::Path;

use garch_portfolio::mgf::{cumulants_from_mgf, mgf_coefficients, wealth_moments};
use garch_portfolio::recursion::solve_optimal;

use crate::artifact::write_csv;
use crate::config::{fmt_f64, RunConfig, ScheduleChoice};
use crate::AppError;

use super::{note_written, resolve_schedule, status_code, validated_inputs};

/// Writes `mgf.csv`: Psi on the u grid (divergent arguments carry a status
/// token) followed by a cumulant/moment row block, all for the configured
/// schedule evaluated at (w0, h0) and t = 0.
pub fn run(cfg: &RunConfig, out: &Path) -> Result<(), AppError> {
    let (params, prefs) = validated_inputs(cfg)?;
    if cfg.u_count == 0 {
        return Err(AppError::config("u_count must be at least 1"));
    }
    let schedule = resolve_schedule(cfg, &params, &prefs)?;
    let w0 = prefs.initial_log_wealth();
    let h0 = cfg.resolved_h0();

    let mut rows: Vec<Vec<String>> = Vec::new();
    let grid = super::linspace(cfg.u_min, cfg.u_max, cfg.u_count);
    for &u in &grid {
        match mgf_coefficients(&params, &schedule, u) {
            Ok(c) => rows.push(vec![
                "u".into(),
                fmt_f64(u),
                fmt_f64(c.a()[0]),
                fmt_f64(c.b()[0]),
                fmt_f64(c.value(0, w0, h0)),
                "ok".into(),
            ]),
            Err(e) => rows.push(vec![
                "u".into(),
                fmt_f64(u),
                String::new(),
                String::new(),
                String::new(),
                status_code(&e).into(),
            ]),
        }
    }

    match cumulants_from_mgf(&params, &schedule, 0, w0, h0, 4) {
        Ok(k) => {
            for (i, v) in k.iter().enumerate() {
                rows.push(vec![
                    "cumulant".into(),
                    (i + 1).to_string(),
                    String::new(),
                    String::new(),
                    fmt_f64(*v),
                    "ok".into(),
                ]);
            }
            let m = wealth_moments(&params, &schedule, 0, w0, h0)?;
            let moment_rows = [
                ("mean", Some(m.mean)),
                ("variance", Some(m.variance)),
                ("skewness", m.skewness),
                ("excess_kurtosis", m.excess_kurtosis),
            ];
            for (name, value) in moment_rows {
                rows.push(vec![
                    "moment".into(),
                    name.into(),
                    String::new(),
                    String::new(),
                    value.map(fmt_f64).unwrap_or_default(),
                    if value.is_some() { "ok".into() } else { "undefined".into() },
                ]);
            }
        }
        Err(e) => rows.push(vec![
            "cumulant".into(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            status_code(&e).into(),
        ]),
    }

    let mut metadata = vec![("command".to_string(), "mgf".to_string())];
    metadata.extend(cfg.metadata());
    metadata.push(("u_min".into(), fmt_f64(cfg.u_min)));
    metadata.push(("u_max".into(), fmt_f64(cfg.u_max)));
    metadata.push(("u_count".into(), cfg.u_count.to_string()));
    // at u = gamma the identity Psi(gamma)/gamma = Phi_0 ties this file to
    // the optimize output; record Phi_0 for the optimal schedule directly
    if cfg.schedule == ScheduleChoice::Optimal {
        let table = solve_optimal(&params, &prefs)?;
        metadata.push(("phi0".into(), fmt_f64(table.value_at(0, w0, h0))));
    }
    note_written(&write_csv(
        out,
        "mgf.csv",
        &metadata,
        &["record", "key", "a0", "b0", "value", "status"],
        &rows,
    )?);
    Ok(())
}
