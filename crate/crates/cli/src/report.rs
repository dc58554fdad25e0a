//! Artifact writing and the per-scenario outcome shared by all commands.
//!
//! Files land in `<out>/<scenario stem>/`, written to a temporary file in
//! the target directory and renamed into place, so a crashed run never
//! leaves a half-written artifact. Formatting is deterministic: struct
//! fields serialize in declaration order, maps are ordered, and floats use
//! the shortest round-trip form.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use crate::{Format, RunOpts};

/// One assertion evaluated while running a scenario.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// What a finished scenario hands back to the driver.
pub struct ScenarioOutcome {
    pub stem: String,
    pub pass: bool,
    /// Names of the failed checks, for the status line.
    pub failed: Vec<String>,
    /// Text echoed to stdout, already formatted per `--format`.
    pub stdout: String,
    pub artifacts: Vec<PathBuf>,
}

/// File name without extension; names the artifact subdirectory.
pub fn scenario_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".into())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).context("serializing report")?;
    text.push('\n');
    Ok(text)
}

/// Writes via a temporary file in the same directory plus a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let dir = dir.unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Writes the report plus an optional CSV table and assembles the outcome.
pub fn finish(
    opts: &RunOpts,
    stem: String,
    report_json: String,
    csv: Option<(&str, String)>,
    checks: &[Check],
) -> Result<ScenarioOutcome> {
    let dir = opts.out.join(&stem);
    let mut artifacts = Vec::new();

    let report_path = dir.join("report.json");
    write_atomic(&report_path, report_json.as_bytes())?;
    artifacts.push(report_path);

    let mut csv_text = String::new();
    if let Some((name, text)) = csv {
        let path = dir.join(name);
        write_atomic(&path, text.as_bytes())?;
        artifacts.push(path);
        csv_text = text;
    }

    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.clone())
        .collect();
    let stdout = match opts.format {
        Format::Json => report_json,
        Format::Csv => csv_text,
    };
    Ok(ScenarioOutcome {
        stem,
        pass: failed.is_empty(),
        failed,
        stdout,
        artifacts,
    })
}

/// `step,...` CSV from labeled columns, floats in full precision.
pub fn csv_table(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
