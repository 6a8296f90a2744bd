use std::path::Path;

use garch_portfolio::limits::{convergence_sweep, DeltaScaling, HESTON_DELTA_REF};

use crate::artifact::write_csv;
use crate::config::{fmt_f64, RunConfig};
use crate::AppError;

use super::{note_written, validated_inputs};

/// Writes `converge.csv`: the initial allocation at each period length in
/// the delta grid against the Heston baseline, with the beta/omega scaling
/// convention recorded in the metadata.
pub fn run(cfg: &RunConfig, out: &Path) -> Result<(), AppError> {
    let (params, prefs) = validated_inputs(cfg)?;
    let rows = convergence_sweep(&params, &prefs, &cfg.deltas)?;
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![fmt_f64(r.delta), fmt_f64(r.pi0), fmt_f64(r.pi_heston), fmt_f64(r.gap)]
        })
        .collect();
    let mut metadata = vec![("command".to_string(), "converge".to_string())];
    metadata.extend(cfg.metadata());
    metadata.push((
        "deltas".into(),
        cfg.deltas.iter().map(|d| fmt_f64(*d)).collect::<Vec<_>>().join(","),
    ));
    metadata.push(("scaling_convention".into(), DeltaScaling::convention().to_string()));
    metadata.push(("heston_delta_ref".into(), fmt_f64(HESTON_DELTA_REF)));
    note_written(&write_csv(
        out,
        "converge.csv",
        &metadata,
        &["delta", "pi_0", "pi_heston", "gap"],
        &csv_rows,
    )?);
    Ok(())
}
