//! CSV artifact writing: '#'-prefixed metadata header lines, a single header
//! row, comma-separated data rows, UTF-8 with LF endings.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::AppError;

pub struct CsvArtifact {
    pub path: PathBuf,
}

pub fn write_csv(
    dir: &Path,
    name: &str,
    metadata: &[(String, String)],
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<CsvArtifact, AppError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| AppError::io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    let file = File::create(&path)
        .map_err(|e| AppError::io(format!("cannot create {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    let mut write = || -> std::io::Result<()> {
        for (key, value) in metadata {
            writeln!(out, "# {key} = {value}")?;
        }
        writeln!(out, "{}", header.join(","))?;
        for row in rows {
            debug_assert_eq!(row.len(), header.len(), "column count must be constant");
            writeln!(out, "{}", row.join(","))?;
        }
        out.flush()
    };
    write().map_err(|e| AppError::io(format!("cannot write {}: {e}", path.display())))?;
    Ok(CsvArtifact { path })
}
