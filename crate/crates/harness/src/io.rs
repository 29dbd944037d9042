//! CSV and JSON persistence.

use std::fs;
use std::path::{Path, PathBuf};

use rlab_core::field::{FieldRecord, CSV_HEADER};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::report::ComparisonReport;

fn output_error(path: &Path, e: impl ToString) -> HarnessError {
    HarnessError::Output { path: path.to_path_buf(), message: e.to_string() }
}

fn input_error(path: &Path, e: impl ToString) -> HarnessError {
    HarnessError::Input { path: path.to_path_buf(), message: e.to_string() }
}

/// Render rows as CSV with the fixed header.
pub fn records_to_csv(records: &[FieldRecord]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| HarnessError::MissingData(e.to_string()))?;
    for r in records {
        w.serialize(r).map_err(|e| HarnessError::MissingData(e.to_string()))?;
    }
    w.into_inner().map_err(|e| HarnessError::MissingData(e.to_string()))
}

pub fn write_records(path: &Path, records: &[FieldRecord]) -> Result<()> {
    fs::write(path, records_to_csv(records)?).map_err(|e| output_error(path, e))
}

/// Read rows, refusing files whose header differs from the schema.
pub fn read_records(path: &Path) -> Result<Vec<FieldRecord>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| input_error(path, e))?;
    let header = r.headers().map_err(|e| input_error(path, e))?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        let got: Vec<&str> = header.iter().collect();
        return Err(input_error(path, format!("unexpected header {got:?}, expected {CSV_HEADER:?}")));
    }
    r.deserialize().map(|row| row.map_err(|e| input_error(path, e))).collect()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| output_error(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| output_error(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| input_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| input_error(path, e))
}

pub fn read_report(path: &Path) -> Result<ComparisonReport> {
    read_json(path)
}

pub fn ensure_dir(dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| output_error(dir, e))?;
    Ok(dir.to_path_buf())
}
