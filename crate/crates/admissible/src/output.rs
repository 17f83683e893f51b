//! Tables rendered as CSV, JSON or aligned plain text.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

use crate::Result;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "ADMISSIBLE_OUT_DIR";

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    /// Header row, comma separated, LF line endings.
    Csv,
    /// Array of objects keyed by column name.
    Json,
    /// Space-aligned columns.
    #[default]
    Plain,
}

impl Format {
    /// File extension.
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Plain => "txt",
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Exact decimal integer of any size.
    Int(String),
    /// Floating-point value, printed with the shortest round-tripping form.
    Float(f64),
    /// Free text.
    Text(String),
}

impl Cell {
    /// Integer cell from anything printable as a decimal integer.
    pub fn int(v: impl ToString) -> Self {
        Cell::Int(v.to_string())
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Float(v) => format!("{v}"),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(s) => s
                .parse::<Number>()
                .map(Value::Number)
                .unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Named columns and rows of cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    /// Column names.
    pub header: Vec<&'static str>,
    /// Rows, each as long as the header.
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Empty table with the given columns.
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    /// Appends a row.
    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Renders the table.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.header.join(",");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::text).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut out = serde_json::to_string_pretty(&rows).expect("plain values");
                out.push('\n');
                out
            }
            Format::Plain => {
                let texts: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::text).collect())
                    .collect();
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|c| {
                        texts
                            .iter()
                            .map(|r| r[c].chars().count())
                            .chain([self.header[c].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let mut out = String::new();
                let line = |cells: Vec<&str>, out: &mut String| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    let _ = writeln!(out, "{}", padded.join("  ").trim_end());
                };
                line(self.header.clone(), &mut out);
                for r in &texts {
                    line(r.iter().map(String::as_str).collect(), &mut out);
                }
                out
            }
        }
    }
}

/// Where data goes: an explicit path, else `<out_dir>/<stem>.<ext>`, else
/// standard output.
pub fn destination(
    explicit: Option<&Path>,
    out_dir: Option<&Path>,
    stem: &str,
    format: Format,
) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| out_dir.map(|d| d.join(format!("{stem}.{}", format.extension()))))
}

/// Writes `text` to `dest` or standard output.
pub fn emit(dest: Option<&Path>, text: &str) -> Result<()> {
    match dest {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)?;
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["k", "name", "x"]);
        t.push(vec![Cell::int(12), Cell::Text("a".into()), Cell::Float(0.5)]);
        t.push(vec![
            Cell::int("340282366920938463463374607431768211456"),
            Cell::Text("bb".into()),
            Cell::Float(-1.25),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().render(Format::Csv),
            "k,name,x\n12,a,0.5\n340282366920938463463374607431768211456,bb,-1.25\n"
        );
    }

    #[test]
    fn json_keeps_big_integers_exact() {
        let text = sample().render(Format::Json);
        assert!(text.contains("340282366920938463463374607431768211456"));
        assert!(!text.contains("e+"));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["k"], 12);
    }

    #[test]
    fn plain_is_aligned() {
        let text = sample().render(Format::Plain);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("k "));
    }
}
