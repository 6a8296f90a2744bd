use std::path::Path;

use garch_portfolio::recursion::{decompose, solve_optimal};

use crate::artifact::write_csv;
use crate::config::{fmt_f64, RunConfig};
use crate::AppError;

use super::{note_written, validated_inputs};

/// Writes `optimize.csv`: one row per decision period with the optimal
/// weight, its myopic/hedging split and the value-function coefficients.
pub fn run(cfg: &RunConfig, out: &Path) -> Result<(), AppError> {
    let (params, prefs) = validated_inputs(cfg)?;
    let table = solve_optimal(&params, &prefs)?;
    let mut rows = Vec::with_capacity(prefs.horizon());
    for t in 0..prefs.horizon() {
        let dec = decompose(&params, prefs.gamma(), table.e()[t + 1])?;
        rows.push(vec![
            t.to_string(),
            fmt_f64(table.schedule().get(t)),
            fmt_f64(dec.myopic),
            fmt_f64(dec.hedging),
            fmt_f64(table.d()[t]),
            fmt_f64(table.e()[t]),
            u8::from(table.admissible_flags()[t]).to_string(),
        ]);
    }
    let mut metadata = vec![("command".to_string(), "optimize".to_string())];
    metadata.extend(cfg.metadata());
    metadata.push(("persistence".into(), fmt_f64(params.persistence())));
    metadata.push(("long_run_variance".into(), fmt_f64(params.long_run_variance())));
    note_written(&write_csv(
        out,
        "optimize.csv",
        &metadata,
        &["t", "pi_star", "myopic", "hedging", "d", "e", "admissible"],
        &rows,
    )?);
    Ok(())
}
