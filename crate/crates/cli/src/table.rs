//! Row output as CSV (complex values split into `_re`/`_im`) or JSON.

use num_complex::Complex64 as C;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Complex(C),
    Bool(bool),
    /// Not available at this row (e.g. the series path at a node).
    Missing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    Complex,
}

#[derive(Debug, Default)]
pub struct Table {
    columns: Vec<(String, Kind)>,
    rows: Vec<Vec<Cell>>,
}

/// Shortest round-trip text; exponent form outside a readable range.
pub fn real_text(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if (1e-4..1e15).contains(&x.abs()) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn cell_json(cell: Cell) -> Value {
    match cell {
        Cell::Real(x) => json!(x),
        Cell::Int(n) => json!(n),
        Cell::Complex(z) => complex_json(z),
        Cell::Bool(b) => json!(b),
        Cell::Missing => Value::Null,
    }
}

pub fn complex_json(z: C) -> Value {
    json!({ "re": z.re, "im": z.im })
}

impl Table {
    pub fn new(columns: &[(&str, Kind)]) -> Self {
        Self { columns: columns.iter().map(|&(n, k)| (n.to_string(), k)).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = csv::Writer::from_writer(Vec::new());
        let header: Vec<String> = self
            .columns
            .iter()
            .flat_map(|(name, kind)| match kind {
                Kind::Real => vec![name.clone()],
                Kind::Complex => vec![format!("{name}_re"), format!("{name}_im")],
            })
            .collect();
        out.write_record(&header).map_err(|e| CliError::Output(e.to_string()))?;
        for row in &self.rows {
            let mut record = Vec::with_capacity(header.len());
            for (cell, (_, kind)) in row.iter().zip(&self.columns) {
                match (*cell, kind) {
                    (Cell::Complex(z), _) => record.extend([real_text(z.re), real_text(z.im)]),
                    (Cell::Real(x), _) => record.push(real_text(x)),
                    (Cell::Int(n), _) => record.push(n.to_string()),
                    (Cell::Bool(b), _) => record.push(b.to_string()),
                    (Cell::Missing, Kind::Complex) => record.extend([String::new(), String::new()]),
                    (Cell::Missing, Kind::Real) => record.push(String::new()),
                }
            }
            out.write_record(&record).map_err(|e| CliError::Output(e.to_string()))?;
        }
        let bytes = out.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let object: Map<String, Value> =
                    self.columns.iter().zip(row).map(|((name, _), &cell)| (name.clone(), cell_json(cell))).collect();
                Value::Object(object)
            })
            .collect();
        Value::Array(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_splits_complex_columns() {
        let mut t = Table::new(&[("y", Kind::Real), ("f", Kind::Complex), ("g", Kind::Complex)]);
        t.push(vec![Cell::Real(0.5), Cell::Complex(C::new(1.0, -2.0)), Cell::Missing]);
        assert_eq!(t.to_csv().unwrap(), "y,f_re,f_im,g_re,g_im\n0.5,1,-2,,\n");
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = Table::new(&[("y", Kind::Real), ("a", Kind::Complex)]);
        t.push(vec![Cell::Real(2.0), Cell::Complex(C::new(0.0, 1.0))]);
        assert_eq!(t.to_json().to_string(), r#"[{"y":2.0,"a":{"re":0.0,"im":1.0}}]"#);
    }

    #[test]
    fn real_text_round_trips() {
        for x in [0.0, 1.0, -2.5, 1e-300, 6.02e23, 2.6123753486854883, 1e-4, 3.3e-5] {
            assert_eq!(real_text(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(real_text(1e-7), "1e-7");
    }
}
