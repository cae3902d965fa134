//! Output rendering shared by the subcommands: aligned text tables, CSV, and
//! JSON, all built from the same rows.

use serde_json::{json, Value};

/// Requested output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A uniform tabular payload: named columns plus optional footer lines
/// (footers appear in text output only).
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footers: Vec<String>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            footers: Vec::new(),
        }
    }

    pub fn push_row<S: Into<String>>(&mut self, row: Vec<S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_footer<S: Into<String>>(&mut self, footer: S) {
        self.footers.push(footer.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json().to_string() + "\n",
        }
    }

    fn render_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = Vec::new();
        for (c, w) in self.columns.iter().zip(&widths) {
            line.push(format!("{c:<w$}"));
        }
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        for row in &self.rows {
            let mut line = Vec::new();
            for (cell, w) in row.iter().zip(&widths) {
                line.push(format!("{cell:<w$}"));
            }
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        for footer in &self.footers {
            out.push_str(footer);
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), Value::String(v.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "rows": rows })
    }
}
