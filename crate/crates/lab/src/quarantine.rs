//! Append-only record of conjecture-violation candidates.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::report::{Counterexample, ScanConfig, ScanReport};

#[derive(Serialize)]
struct Entry<'a> {
    config: &'a ScanConfig,
    counterexample: &'a Counterexample,
}

/// Appends one JSON line per counterexample in `report`, with the configuration
/// needed to replay it, and syncs the file. Returns the number written.
pub fn quarantine(path: &Path, report: &ScanReport) -> Result<usize> {
    if report.counterexamples.is_empty() {
        return Ok(0);
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for c in &report.counterexamples {
        let line = serde_json::to_string(&Entry { config: &report.config, counterexample: c })?;
        writeln!(file, "{line}")?;
    }
    file.sync_all()?;
    Ok(report.counterexamples.len())
}
