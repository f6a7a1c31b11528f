//! Tabular output shared by every subcommand: CSV (header row, LF endings,
//! floats at 17 significant digits) and JSON (`{"config": {...}, "rows":
//! [...]}` with keys in column order). Both encodings round-trip to the same
//! f64 bit patterns.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(&'static str),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigValue {
    Int(i64),
    Float(f64),
    Str(String),
    FloatList(Vec<f64>),
    IntList(Vec<i64>),
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// 17 significant digits: lossless binary64 round-trip.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON uses the shortest exponent-form representation that round-trips,
/// which parses back to the identical f64. Non-finite values (which no
/// command produces) degrade to null.
fn fmt_float_json(v: f64) -> String {
    if !v.is_finite() {
        return "null".into();
    }
    format!("{v:e}")
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    s.push(',');
                }
                first = false;
                match cell {
                    Cell::Int(v) => {
                        let _ = write!(s, "{v}");
                    }
                    Cell::Float(v) => s.push_str(&fmt_float(*v)),
                    Cell::Str(v) => s.push_str(v),
                    Cell::Empty => {}
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self, config: &[(&'static str, ConfigValue)]) -> String {
        let mut s = String::from("{\n  \"config\": {");
        let mut first = true;
        for (key, value) in config {
            if !first {
                s.push_str(", ");
            }
            first = false;
            let _ = write!(s, "\"{key}\": ");
            match value {
                ConfigValue::Int(v) => {
                    let _ = write!(s, "{v}");
                }
                ConfigValue::Float(v) => s.push_str(&fmt_float_json(*v)),
                ConfigValue::Str(v) => {
                    let _ = write!(s, "\"{v}\"");
                }
                ConfigValue::FloatList(vs) => {
                    s.push('[');
                    for (i, v) in vs.iter().enumerate() {
                        if i > 0 {
                            s.push_str(", ");
                        }
                        s.push_str(&fmt_float_json(*v));
                    }
                    s.push(']');
                }
                ConfigValue::IntList(vs) => {
                    s.push('[');
                    for (i, v) in vs.iter().enumerate() {
                        if i > 0 {
                            s.push_str(", ");
                        }
                        let _ = write!(s, "{v}");
                    }
                    s.push(']');
                }
            }
        }
        s.push_str("},\n  \"rows\": [\n");
        for (ri, row) in self.rows.iter().enumerate() {
            s.push_str("    {");
            for (ci, cell) in row.iter().enumerate() {
                if ci > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "\"{}\": ", self.columns[ci]);
                match cell {
                    Cell::Int(v) => {
                        let _ = write!(s, "{v}");
                    }
                    Cell::Float(v) => s.push_str(&fmt_float_json(*v)),
                    Cell::Str(v) => {
                        let _ = write!(s, "\"{v}\"");
                    }
                    Cell::Empty => s.push_str("null"),
                }
            }
            s.push('}');
            if ri + 1 < self.rows.len() {
                s.push(',');
            }
            s.push('\n');
        }
        s.push_str("  ]\n}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape_and_lossless_floats() {
        let mut t = Table::new(vec!["a", "b", "c"]);
        t.push(vec![Cell::Int(3), Cell::Float(0.1), Cell::Empty]);
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "a,b,c");
        let row = lines.next().unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], "3");
        assert_eq!(fields[1].parse::<f64>().unwrap(), 0.1);
        assert_eq!(fields[2], "");
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_preserves_column_order_and_values() {
        let mut t = Table::new(vec!["x", "y"]);
        t.push(vec![Cell::Float(1.5e-300), Cell::Str("zero")]);
        let json = t.to_json(&[("alpha", ConfigValue::Float(0.3))]);
        assert!(json.contains("\"config\": {\"alpha\": 3e-1}"));
        let xi = json.find("\"x\"").unwrap();
        let yi = json.find("\"y\"").unwrap();
        assert!(xi < yi);
        assert!(json.contains("1.5e-300"));
    }
}
