//! Rendering of sequence tables as CSV, JSON, or OEIS-style b-files.

use std::fmt::Write as _;

use serde_json::json;

use derangements::sequences::SequenceTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    BFile,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "bfile" => Ok(OutputFormat::BFile),
            other => Err(format!(
                "unknown format {other:?}; expected csv, json, or bfile"
            )),
        }
    }
}

/// Renders a table; all counts are decimal strings in every format.
pub fn render(table: &SequenceTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("n,value,method\n");
            for (n, value) in &table.values {
                writeln!(out, "{n},{value},{}", table.method).unwrap();
            }
            out
        }
        OutputFormat::BFile => {
            let mut out = String::new();
            for (n, value) in &table.values {
                writeln!(out, "{n} {value}").unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let value = json!({
                "family": table.family.name(),
                "r": table.r.to_string(),
                "u": table.u.to_string(),
                "m": table.m.to_string(),
                "k": table.k.map(|k| k.to_string()),
                "i": table.parity.map(|p| p.bit().to_string()),
                "method": table.method.name(),
                "values": table.values.iter().map(|(n, count)| json!({
                    "n": n.to_string(),
                    "value": count.to_string(),
                })).collect::<Vec<_>>(),
            });
            let mut out = serde_json::to_string_pretty(&value).unwrap();
            out.push('\n');
            out
        }
    }
}
