//! Tabular reports rendered as JSON (numbers at full precision) or CSV
//! (12 significant digits, `.` separator, LF line endings).

use serde_json::{Map, Number, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<i8> for Cell {
    fn from(n: i8) -> Self {
        Cell::Int(n.into())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        // Keep `-0` out of reports.
        Cell::Float(if x == 0.0 { 0.0 } else { x })
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(n) => Value::Number((*n).into()),
            Cell::Float(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => format_significant(*x, 12),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// One object per row, keys in header order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.headers.iter().zip(row).map(|(h, c)| (h.clone(), c.to_json())).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Malformed(format!("csv: {e}"));
        writer.write_record(&self.headers).map_err(io)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::to_csv)).map_err(io)?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Malformed(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
    }
}

/// Pretty JSON with a trailing newline; stable under parse and re-serialize.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values built from finite numbers serialize");
    s.push('\n');
    s
}

/// `%.{digits}g`: shortest of fixed or scientific notation, trailing zeros
/// removed, independent of locale.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let precision = digits.max(1) - 1;
    let sci = format!("{:.*e}", precision, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if exponent < -4 || exponent >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    } else {
        let decimals = (precision as i32 - exponent).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(-1.0, 12), "-1");
        assert_eq!(format_significant(2.0 - 0.75 * 3f64.log2(), 12), "0.811278124459");
        assert_eq!(format_significant(std::f64::consts::LN_2, 12), "0.69314718056");
        assert_eq!(format_significant(1.5e-7, 12), "1.5e-07");
        assert_eq!(format_significant(123456789012345.0, 12), "1.23456789012e+14");
        assert_eq!(format_significant(0.999999999999999, 12), "1");
        assert_eq!(format_significant(0.5, 12), "0.5");
        assert_eq!(format_significant(100.0, 12), "100");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["name", "n", "x"]);
        t.push(vec!["a,b".into(), 3usize.into(), (1.0 / 3.0).into()]);
        t.push(vec!["c".into(), 0usize.into(), (-0.0).into()]);
        assert_eq!(t.to_csv().unwrap(), "name,n,x\n\"a,b\",3,0.333333333333\nc,0,0\n");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut t = Table::new(vec!["z", "a", "x"]);
        t.push(vec!["q".into(), 1usize.into(), 0.1f64.into()]);
        t.push(vec!["r".into(), 2usize.into(), (2.0 - 0.75 * 3f64.log2()).into()]);
        let first = render_json(&t.to_json());
        let reparsed: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(render_json(&reparsed), first);
        assert!(first.find("\"z\"").unwrap() < first.find("\"a\"").unwrap());
    }
}
