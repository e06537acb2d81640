//! Report assembly and JSON/CSV output.

use std::io::Write;

use clap::ValueEnum;
use expmetrics::estimate::SlopeEstimate;
use expmetrics::relations::RelationReport;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Custom CSV layout for reports that are not slope tables.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub config: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub estimates: Vec<SlopeEstimate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub pass: bool,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            estimates: Vec::new(),
            relations: Vec::new(),
            details: None,
            pass: true,
            table: None,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Usage(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
        }
    }

    fn table_for_csv(&self) -> Table {
        if let Some(t) = &self.table {
            return t.clone();
        }
        if !self.relations.is_empty() {
            return relation_table(&self.relations);
        }
        let mut t = Table {
            header: ["quantity", "n_or_r", "raw_count_or_mass(log)", "fitted", "residual"]
                .map(String::from)
                .to_vec(),
            rows: Vec::new(),
        };
        for e in &self.estimates {
            for r in &e.rows {
                t.rows.push(vec![
                    e.quantity.clone(),
                    r.param.to_string(),
                    r.y.to_string(),
                    r.fitted.to_string(),
                    r.residual.to_string(),
                ]);
            }
        }
        t
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut out = Vec::new();
        writeln!(out, "# schema_version: {SCHEMA_VERSION}").expect("write to Vec");
        writeln!(out, "# command: {}", self.command).expect("write to Vec");
        writeln!(out, "# config: {}", self.config).expect("write to Vec");
        for e in &self.estimates {
            let target = e.target.map_or("none".to_string(), |t| t.to_string());
            writeln!(out, "# {}: slope {} target {}", e.quantity, e.slope, target).expect("write to Vec");
        }
        let t = self.table_for_csv();
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
        w.write_record(&t.header).map_err(csv_err)?;
        for row in &t.rows {
            w.write_record(row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

pub fn relation_table(rels: &[RelationReport]) -> Table {
    Table {
        header: ["name", "lhs", "rhs", "rel_error", "tolerance", "pass"].map(String::from).to_vec(),
        rows: rels
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.rel_error.to_string(),
                    r.tolerance.to_string(),
                    r.pass.to_string(),
                ]
            })
            .collect(),
    }
}
