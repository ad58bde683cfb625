//! Per-command output directories and the JSON-lines check summary.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use curved_duality::io::{write_json_lines, CheckRecord};

use crate::error::CliError;

pub const SUMMARY_FILE: &str = "summary.jsonl";

/// Output directory of one command, collecting check records as it goes.
pub struct RunDir {
    pub path: PathBuf,
    records: Vec<CheckRecord>,
}

impl RunDir {
    pub fn create(root: &Path, command: &str) -> Result<Self, CliError> {
        let path = root.join(command);
        fs::create_dir_all(&path).map_err(|e| CliError::io(&path, e))?;
        Ok(Self { path, records: Vec::new() })
    }

    /// Writes `name` inside the directory through a buffered writer.
    pub fn write<F>(&self, name: &str, f: F) -> Result<PathBuf, CliError>
    where
        F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
    {
        let path = self.path.join(name);
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        let mut w = BufWriter::new(file);
        f(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    pub fn check(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    /// Writes the summary, prints one line per check and returns whether all passed.
    pub fn finish(self) -> Result<bool, CliError> {
        self.write(SUMMARY_FILE, |w| write_json_lines(w, &self.records))?;
        for r in &self.records {
            let tag = if r.pass { "PASS" } else { "FAIL" };
            println!("[{tag}] {}: {:.3e} (tol {:.0e})", r.name, r.value, r.tolerance);
        }
        println!("wrote {}", self.path.display());
        Ok(self.records.iter().all(|r| r.pass))
    }
}

/// Joins already-formatted fields into one CSV row.
pub fn row(fields: impl IntoIterator<Item = String>) -> String {
    fields.into_iter().collect::<Vec<_>>().join(",")
}
