use std::io::Write;

use serde_json::{json, Map, Value};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) if x.is_nan() => String::new(),
            Cell::Float(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.to_string(),
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Null => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::Float)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Self-describing output table. The parameter echo lists every flag needed
/// to regenerate it.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new(command: &str, params: Vec<(String, String)>, columns: &[&str]) -> Self {
        ResultTable {
            command: command.to_string(),
            params,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Shell-ready argument string reproducing the table.
    pub fn command_line(&self) -> String {
        let mut s = self.command.clone();
        for (k, v) in &self.params {
            s.push_str(&format!(" --{k} {v}"));
        }
        s
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        writeln!(out, "# schema_version: {SCHEMA_VERSION}")?;
        writeln!(out, "# command: {}", self.command)?;
        writeln!(out, "# library_version: {LIBRARY_VERSION}")?;
        for (k, v) in &self.params {
            writeln!(out, "# param {k}: {v}")?;
        }
        writeln!(out, "# args: {}", self.command_line())?;
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        json!({
            "meta": {
                "schema_version": SCHEMA_VERSION,
                "command": self.command,
                "library_version": LIBRARY_VERSION,
                "params": params,
                "args": self.command_line(),
            },
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())
                    .map_err(|e| CliError::Input(format!("cannot serialize table: {e}")))?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        String::from_utf8(buf).map_err(|e| CliError::Input(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Input(format!("CSV error: {e}"))
}

/// A table read back from CSV or JSON, with every cell as text and the
/// metadata lines kept as key/value pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct InputTable {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl InputTable {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_csv(text)
        }
    }

    fn parse_csv(text: &str) -> Result<Self, CliError> {
        let meta = text
            .lines()
            .filter_map(|l| l.strip_prefix('#'))
            .filter_map(|l| l.split_once(':'))
            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            .collect();
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let columns = r.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<Result<Vec<Vec<String>>, _>>()
            .map_err(csv_error)?;
        Ok(InputTable { meta, columns, rows })
    }

    fn parse_json(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON table: {e}")))?;
        let columns = v["columns"]
            .as_array()
            .ok_or_else(|| CliError::Input("JSON table has no 'columns' array".into()))?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or_else(|| CliError::Input("column names must be strings".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = v["rows"]
            .as_array()
            .ok_or_else(|| CliError::Input("JSON table has no 'rows' array".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| CliError::Input("each row must be an array".into()))
                    .map(|cells| {
                        cells
                            .iter()
                            .map(|c| match c {
                                Value::Null => String::new(),
                                Value::String(s) => s.clone(),
                                other => other.to_string(),
                            })
                            .collect()
                    })
            })
            .collect::<Result<Vec<Vec<String>>, _>>()?;
        let mut meta = Vec::new();
        if let Some(m) = v["meta"].as_object() {
            for (k, val) in m {
                if k != "params" {
                    meta.push((k.clone(), val.as_str().map_or_else(|| val.to_string(), str::to_string)));
                }
            }
            if let Some(p) = m.get("params").and_then(Value::as_object) {
                for (k, val) in p {
                    meta.push((format!("param {k}"), val.as_str().unwrap_or_default().to_string()));
                }
            }
        }
        Ok(InputTable { meta, columns, rows })
    }

    pub fn column(&self, name: &str) -> Result<usize, CliError> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| CliError::Input(format!("missing column '{name}' (have {})", self.columns.join(", "))))
    }

    /// Column as floats; empty cells become NaN.
    pub fn floats(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let k = self.column(name)?;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let cell = row.get(k).map(String::as_str).unwrap_or("");
                if cell.is_empty() {
                    return Ok(f64::NAN);
                }
                cell.parse::<f64>()
                    .map_err(|_| CliError::Input(format!("row {i}, column '{name}': '{cell}' is not a number")))
            })
            .collect()
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}
