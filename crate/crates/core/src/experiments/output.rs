//! Tabular results and their CSV/JSON encodings.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// Commit the binary was built from, or `unknown`.
pub const GIT_HASH: &str = match option_env!("CRITICAL_CHAIN_GIT_HASH") {
    Some(h) => h,
    None => "unknown",
};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Num(f64),
    Int(i64),
    Flag(bool),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Num(v) => Some(*v),
            Value::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Value::Num(v) => format_sci(*v),
            Value::Int(v) => v.to_string(),
            Value::Flag(v) => v.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Flag(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_owned())
    }
}

/// `printf("%.12e")`: twelve mantissa digits, signed exponent of at least two digits.
pub fn format_sci(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let raw = format!("{v:.12e}");
    let (mantissa, exp) = raw.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Ordered rows produced by one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub command: String,
    /// Input parameters, in emission order.
    pub params: Vec<(String, String)>,
    /// Derived scalars such as fitted slopes.
    pub summary: Vec<(String, f64)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl SweepResult {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.into(),
            params: Vec::new(),
            summary: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Parse(format!("no column named {name}")))
    }

    /// Numeric column by name; non-numeric cells become NaN.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let i = self.index(name)?;
        Ok(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn flags(&self, name: &str) -> Result<Vec<bool>> {
        let i = self.index(name)?;
        Ok(self.rows.iter().map(|r| matches!(r[i], Value::Flag(true))).collect())
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    /// CSV with a `#`-prefixed metadata block.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# critical-chain {} {}", env!("CARGO_PKG_VERSION"), self.command)?;
        writeln!(out, "# git {GIT_HASH}")?;
        for (k, v) in &self.params {
            writeln!(out, "# param {k} = {v}")?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# summary {k} = {}", format_sci(*v))?;
        }
        let mut csv = csv::Writer::from_writer(out);
        csv.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            csv.write_record(row.iter().map(Value::render)).map_err(csv_error)?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        #[derive(Serialize)]
        struct Doc<'a> {
            command: &'a str,
            version: &'a str,
            git: &'a str,
            params: serde_json::Map<String, serde_json::Value>,
            summary: serde_json::Map<String, serde_json::Value>,
            columns: &'a [String],
            rows: &'a [Vec<Value>],
        }
        let params = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let summary = self
            .summary
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!(v)))
            .collect();
        let doc = Doc {
            command: &self.command,
            version: env!("CARGO_PKG_VERSION"),
            git: GIT_HASH,
            params,
            summary,
            columns: &self.columns,
            rows: &self.rows,
        };
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}
