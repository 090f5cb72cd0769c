use serde::Serialize;
use serde_json::Value;
use totient_core::power_two::FermatStatusTable;

use crate::commands::Failure;

pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub status_table_hash: String,
}

impl Provenance {
    pub fn new(table: &FermatStatusTable) -> Self {
        Provenance {
            version: env!("CARGO_PKG_VERSION"),
            status_table_hash: table.digest(),
        }
    }
}

/// One command invocation. Everything except `wall_time_ms` is a function of
/// the inputs, the version and the Fermat table; `wall_time_ms` is always the
/// last field.
#[derive(Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Provenance,
    pub wall_time_ms: f64,
}

pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn to_json(record: &OutputRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("records are plain data");
    s.push('\n');
    s
}

pub fn to_csv(table: &CsvTable) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
