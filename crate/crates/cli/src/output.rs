//! Record-oriented output in aligned-table, CSV and JSON-lines form.
//!
//! Probabilities expand into two columns: `key` with the exact fraction and
//! `key_decimal` rounded to 12 places. Rendering is deterministic.

use serde_json::{Map, Value};
use sqerr_core::rational::{to_decimal_string, to_fraction_string, Rational};

pub const DECIMAL_PLACES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i128),
    Bool(bool),
    Float(f64),
    /// Exact rational printed as a fraction only.
    Exact(Rational),
    /// Probability printed as fraction and decimal; `None` prints `-`.
    Prob(Option<Rational>),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn int(v: impl Into<i128>) -> Self {
        Cell::Int(v.into())
    }

    pub fn prob(r: Rational) -> Self {
        Cell::Prob(Some(r))
    }

    fn expand(&self, key: &str) -> Vec<(String, Value)> {
        match self {
            Cell::Text(s) => vec![(key.to_string(), Value::String(s.clone()))],
            Cell::Int(v) => {
                let value = i64::try_from(*v).map_or_else(|_| Value::String(v.to_string()), Value::from);
                vec![(key.to_string(), value)]
            }
            Cell::Bool(b) => vec![(key.to_string(), Value::Bool(*b))],
            Cell::Float(x) => vec![(key.to_string(), Value::String(float_string(*x)))],
            Cell::Exact(r) => vec![(key.to_string(), Value::String(to_fraction_string(r)))],
            Cell::Prob(r) => {
                let (exact, dec) = match r {
                    Some(r) => (to_fraction_string(r), to_decimal_string(r, DECIMAL_PLACES)),
                    None => ("-".to_string(), "-".to_string()),
                };
                vec![
                    (key.to_string(), Value::String(exact)),
                    (format!("{key}_decimal"), Value::String(dec)),
                ]
            }
        }
    }
}

/// One row: ordered `(key, cell)` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Cell)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, cell: Cell) -> Self {
        self.fields.push((key.to_string(), cell));
        self
    }

    fn flat(&self) -> Vec<(String, Value)> {
        self.fields.iter().flat_map(|(k, c)| c.expand(k)).collect()
    }
}

/// A titled group of records sharing one set of columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub title: Option<String>,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub sections: Vec<Section>,
}

impl Output {
    pub fn single(record: Record) -> Self {
        Self::default().section(None, vec![record])
    }

    pub fn section(mut self, title: Option<&str>, records: Vec<Record>) -> Self {
        self.sections.push(Section {
            title: title.map(str::to_string),
            records,
        });
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
            Format::JsonLines => self.render_json_lines(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if let Some(title) = &section.title {
                out.push_str(&format!("# {title}\n"));
            }
            let rows: Vec<Vec<(String, String)>> = section
                .records
                .iter()
                .map(|r| r.flat().into_iter().map(|(k, v)| (k, plain(&v))).collect())
                .collect();
            if let [row] = rows.as_slice() {
                let width = row.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in row {
                    out.push_str(&format!("{k:<width$}  {v}\n"));
                }
                continue;
            }
            let Some(first) = rows.first() else { continue };
            let header: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, (_, v)) in widths.iter_mut().zip(row) {
                    *w = (*w).max(v.len());
                }
            }
            push_aligned(&mut out, header.iter().copied(), &widths);
            for row in &rows {
                push_aligned(&mut out, row.iter().map(|(_, v)| v.as_str()), &widths);
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let parts: Vec<String> = self
            .sections
            .iter()
            .map(|section| {
                let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
                for (j, record) in section.records.iter().enumerate() {
                    let flat = record.flat();
                    if j == 0 {
                        writer.write_record(flat.iter().map(|(k, _)| k)).expect("in-memory write");
                    }
                    writer
                        .write_record(flat.iter().map(|(_, v)| plain(v)))
                        .expect("in-memory write");
                }
                String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
            })
            .collect();
        parts.join("\n")
    }

    fn render_json_lines(&self) -> String {
        let mut out = String::new();
        for section in &self.sections {
            for record in &section.records {
                let mut map = Map::new();
                if let Some(title) = &section.title {
                    map.insert("section".to_string(), Value::String(title.clone()));
                }
                map.extend(record.flat());
                out.push_str(&Value::Object(map).to_string());
                out.push('\n');
            }
        }
        out
    }
}

fn float_string(x: f64) -> String {
    let text = format!("{x:.DECIMAL_PLACES$}");
    match text.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => text,
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn push_aligned<'a>(out: &mut String, cells: impl Iterator<Item = &'a str>, widths: &[usize]) {
    let line: Vec<String> = cells.zip(widths).map(|(c, &w)| format!("{c:<w$}")).collect();
    out.push_str(line.join("  ").trim_end());
    out.push('\n');
}
