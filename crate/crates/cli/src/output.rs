use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Csv,
    Json,
}

/// A titled block of rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Two-column `key, value` table.
    pub fn key_value(pairs: &[(&str, String)]) -> Self {
        let mut t = Table::new(["key", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.to_string(), v.clone()]);
        }
        t
    }
}

/// Everything a subcommand prints: tables for TSV/CSV, a value for JSON.
pub struct Report {
    pub tables: Vec<Table>,
    pub json: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("report values serialize");
                s.push('\n');
                s
            }
            Format::Tsv | Format::Csv => {
                let sep = if format == Format::Tsv { "\t" } else { "," };
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "{}", join(&t.headers, sep, format));
                    for r in &t.rows {
                        let _ = writeln!(out, "{}", join(r, sep, format));
                    }
                }
                out
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let text = self.render(format);
        match out {
            Some(p) => fs::write(p, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

fn join(cells: &[String], sep: &str, format: Format) -> String {
    cells
        .iter()
        .map(|c| {
            if format == Format::Csv && (c.contains(',') || c.contains('"')) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(sep)
}

/// Three significant figures in scientific notation below `1e-3`, four
/// decimals otherwise.
pub fn format_p(p: f64) -> String {
    if p.is_nan() {
        return "NaN".into();
    }
    if p >= 1e-3 {
        return format!("{p:.4}");
    }
    let s = format!("{p:.2e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!(
        "{mantissa}e{}{:02}",
        if exp < 0 { '-' } else { '+' },
        exp.abs()
    )
}

pub fn format_num(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "Inf" } else { "-Inf" }.into()
    } else if x != 0.0 && (x.abs() < 1e-3 || x.abs() >= 1e7) {
        format!("{x:.4e}")
    } else {
        format!("{x:.4}")
    }
}
