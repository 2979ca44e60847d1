//! Report model with deterministic JSON and CSV rendering.

use std::io::Write;

use efp_core::exact::format_rational;
use efp_core::{BigFloat, ExactRational};
use serde_json::{json, Map, Value};

use crate::error::CliResult;

pub const SCHEMA: &str = "efp-report/1";

/// Significant digits printed for a value carried at `bits` of precision.
pub fn digits_for(bits: u32) -> usize {
    ((f64::from(bits) * std::f64::consts::LOG10_2).floor() as usize).clamp(6, 60)
}

#[derive(Clone, Debug)]
pub enum Cell {
    Rational(String),
    Real { value: String, precision_bits: u32 },
    Int(i64),
    Bool(bool),
    Text(String),
    List(Vec<String>),
    Empty,
}

impl Cell {
    pub fn rational(q: &ExactRational) -> Self {
        Cell::Rational(format_rational(q))
    }

    pub fn real(x: &BigFloat) -> Self {
        let bits = x.prec();
        Cell::Real { value: x.to_sci_string(digits_for(bits)), precision_bits: bits }
    }

    pub fn float(x: f64) -> Self {
        Cell::Real { value: format!("{x:.6e}"), precision_bits: 53 }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Rational(s) | Cell::Text(s) => json!(s),
            Cell::Real { value, precision_bits } => json!({ "value": value, "precision_bits": precision_bits }),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::List(v) => json!(v),
            Cell::Empty => Value::Null,
        }
    }

    fn csv(&self) -> (String, Option<u32>) {
        match self {
            Cell::Rational(s) | Cell::Text(s) => (s.clone(), None),
            Cell::Real { value, precision_bits } => (value.clone(), Some(*precision_bits)),
            Cell::Int(n) => (n.to_string(), None),
            Cell::Bool(b) => (b.to_string(), None),
            Cell::List(v) => (v.join(";"), None),
            Cell::Empty => (String::new(), None),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub key: String,
    pub cells: Vec<(String, Cell)>,
}

impl Row {
    pub fn new(key: impl Into<String>) -> Self {
        Self { key: key.into(), cells: Vec::new() }
    }

    pub fn with(mut self, name: &str, cell: Cell) -> Self {
        self.cells.push((name.to_string(), cell));
        self
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub precision_bits: u32,
    pub inputs: Vec<(String, String)>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
    /// `Some` for verification runs.
    pub pass: Option<bool>,
}

impl Report {
    pub fn new(command: &str, precision_bits: u32) -> Self {
        Self {
            command: command.to_string(),
            precision_bits,
            inputs: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            pass: None,
        }
    }

    pub fn input(mut self, name: &str, value: impl ToString) -> Self {
        self.inputs.push((name.to_string(), value.to_string()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut results = Map::new();
        for row in &self.rows {
            let mut obj = Map::new();
            for (name, cell) in &row.cells {
                obj.insert(name.clone(), cell.json());
            }
            results.insert(row.key.clone(), Value::Object(obj));
        }
        let mut top = Map::new();
        top.insert("schema".into(), json!(SCHEMA));
        top.insert("command".into(), json!(self.command));
        top.insert("precision_bits".into(), json!(self.precision_bits));
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        top.insert("inputs".into(), Value::Object(inputs));
        if let Some(pass) = self.pass {
            top.insert("pass".into(), json!(pass));
        }
        top.insert("results".into(), Value::Object(results));
        if !self.notes.is_empty() {
            top.insert("notes".into(), json!(self.notes));
        }
        Value::Object(top)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json()).map_err(std::io::Error::from)?;
        writeln!(out)?;
        Ok(())
    }

    /// One header row, then one line per result; real cells report their precision in a trailing column.
    pub fn write_csv(&self, out: &mut dyn Write) -> CliResult<()> {
        let mut columns: Vec<String> = Vec::new();
        for row in &self.rows {
            for (name, _) in &row.cells {
                if !columns.contains(name) {
                    columns.push(name.clone());
                }
            }
        }
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["key".to_string()];
        header.extend(columns.iter().cloned());
        header.push("precision_bits".into());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![row.key.clone()];
            let mut prec = None;
            for col in &columns {
                let cell = row.cells.iter().find(|(n, _)| n == col).map(|(_, c)| c.csv());
                let (text, p) = cell.unwrap_or_default();
                prec = prec.or(p);
                rec.push(text);
            }
            rec.push(prec.map(|p| p.to_string()).unwrap_or_default());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `log(e_i/e_{i−1}) / log(s_i/s_{i−1})` for consecutive rows.
pub fn fitted_exponents(s: &[f64], err: &[f64]) -> Vec<Option<f64>> {
    (0..s.len())
        .map(|i| {
            if i == 0 || err[i] <= 0.0 || err[i - 1] <= 0.0 {
                None
            } else {
                Some((err[i] / err[i - 1]).ln() / (s[i] / s[i - 1]).ln())
            }
        })
        .collect()
}

pub fn exponent_cell(x: Option<f64>) -> Cell {
    match x {
        Some(v) => Cell::Real { value: format!("{v:.4}"), precision_bits: 53 },
        None => Cell::Empty,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_clamped() {
        assert_eq!(digits_for(32), 9);
        assert_eq!(digits_for(8), 6);
        assert_eq!(digits_for(4096), 60);
    }

    #[test]
    fn exponent_fit() {
        let s = [4.0, 8.0, 16.0];
        let err = [1.0, 1.0 / 64.0, 0.0];
        let e = fitted_exponents(&s, &err);
        assert_eq!(e[0], None);
        assert!((e[1].unwrap() + 6.0).abs() < 1e-12);
        assert_eq!(e[2], None);
    }

    #[test]
    fn csv_fills_missing_cells() {
        let mut r = Report::new("t", 64);
        r.rows.push(Row::new("a").with("x", Cell::Int(1)));
        r.rows.push(Row::new("b").with("y", Cell::Bool(false)));
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "key,x,y,precision_bits\na,1,,\nb,,false,\n");
    }
}
