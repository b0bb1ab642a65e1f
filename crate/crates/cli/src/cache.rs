//! Family-table cache: CSV files keyed by sequence, table size and tool
//! version. A corrupt or mismatched file is reported to the caller, who
//! recomputes with a warning.

use hankel_core::families::{FamilyRow, TABLE_CSV_HEADER};
use std::path::{Path, PathBuf};

pub const ENV_CACHE_DIR: &str = "HANKEL_CACHE_DIR";

/// Resolved cache file path, if caching is configured: explicit flag first,
/// then the environment override.
pub fn location(flag: &Option<PathBuf>, seq_name: &str, max_n: usize) -> Option<PathBuf> {
    let dir = flag
        .clone()
        .or_else(|| std::env::var_os(ENV_CACHE_DIR).map(PathBuf::from))?;
    Some(dir.join(format!(
        "families-{seq_name}-{max_n}-v{}.csv",
        env!("CARGO_PKG_VERSION")
    )))
}

/// Loads a cached table. `Ok(None)` when the file does not exist;
/// `Err(reason)` when it exists but cannot be trusted.
pub fn load(path: &Path, max_n: usize) -> Result<Option<Vec<FamilyRow>>, String> {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(err) => return Err(err.to_string()),
    };
    let mut lines = text.lines();
    if lines.next() != Some(TABLE_CSV_HEADER) {
        return Err("bad header".to_string());
    }
    let mut table = Vec::with_capacity(max_n);
    for (i, line) in lines.enumerate() {
        let row = FamilyRow::parse_csv_line(line, i + 2).map_err(|e| e.to_string())?;
        if row.n != i + 1 {
            return Err(format!("row {} out of order", i + 2));
        }
        table.push(row);
    }
    if table.len() != max_n {
        return Err(format!("expected {max_n} rows, found {}", table.len()));
    }
    Ok(Some(table))
}

pub fn store(path: &Path, csv: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, csv)
}
