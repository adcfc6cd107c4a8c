//! Run reports and their JSON, CSV and graph6 renderings.

use std::path::Path;

use anyhow::{bail, Context, Result};
use homlab::graph::FiniteGraph;
use homlab::io::to_graph6;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// Effective configuration, with defaults filled in.
    pub config: Value,
    pub result: Value,
    pub timing_ms: f64,
    pub version: String,
}

impl RunReport {
    /// Pretty JSON without the timing field, for reproducibility comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialise");
        if let Value::Object(m) = &mut v {
            m.remove("timing_ms");
        }
        serde_json::to_string_pretty(&v).expect("reports serialise")
    }
}

/// Rows for CSV output; a table with no rows renders as its header alone.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// What a command hands back besides its JSON result.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Value,
    pub table: Table,
    pub graphs: Vec<FiniteGraph>,
}

impl Outcome {
    pub fn new(result: impl Serialize, table: Table) -> Result<Self> {
        Ok(Outcome {
            result: serde_json::to_value(result)?,
            table,
            graphs: Vec::new(),
        })
    }

    pub fn with_graphs(mut self, graphs: Vec<FiniteGraph>) -> Self {
        self.graphs = graphs;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    G6,
}

/// Where and how to write: `json`, `csv` and `g6` go to standard output,
/// anything else is a file path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emit {
    pub format: Format,
    pub path: Option<String>,
}

impl Emit {
    pub fn parse(spec: Option<&str>) -> Self {
        let keyword = |s: &str| match s.to_ascii_lowercase().as_str() {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "g6" | "graph6" => Some(Format::G6),
            _ => None,
        };
        match spec {
            None => Emit {
                format: Format::Json,
                path: None,
            },
            Some(s) => match keyword(s) {
                Some(format) => Emit { format, path: None },
                None => {
                    let ext = Path::new(s).extension().and_then(|e| e.to_str()).unwrap_or("");
                    Emit {
                        format: keyword(ext).unwrap_or(Format::Json),
                        path: Some(s.to_string()),
                    }
                }
            },
        }
    }

    pub fn render(&self, report: &RunReport, outcome: &Outcome) -> Result<String> {
        match self.format {
            Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
            Format::Csv => outcome.table.to_csv(),
            Format::G6 => {
                if outcome.graphs.is_empty() {
                    bail!("command {} produces no graphs for graph6 output", report.command);
                }
                Ok(outcome.graphs.iter().map(|g| to_graph6(g) + "\n").collect())
            }
        }
    }

    pub fn write(&self, report: &RunReport, outcome: &Outcome) -> Result<()> {
        let text = self.render(report, outcome)?;
        match &self.path {
            None => print!("{text}"),
            Some(p) => {
                std::fs::write(p, text).with_context(|| format!("cannot write {p}"))?;
                eprintln!("wrote {p}");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(["bin_low", "bin_high", "count"]);
        assert_eq!(t.to_csv().unwrap(), "bin_low,bin_high,count\n");
    }

    #[test]
    fn emit_targets() {
        assert_eq!(Emit::parse(Some("g6")).format, Format::G6);
        let e = Emit::parse(Some("out/hist.csv"));
        assert_eq!((e.format, e.path.as_deref()), (Format::Csv, Some("out/hist.csv")));
        assert_eq!(Emit::parse(Some("map.json")).format, Format::Json);
        assert_eq!(Emit::parse(None), Emit { format: Format::Json, path: None });
    }
}
