//! Rendering of command results as plain text, CSV or JSON.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

/// Largest magnitude every JSON reader represents exactly.
const SAFE_INTEGER: i64 = (1 << 53) - 1;

/// A native number up to `2^53 - 1` in magnitude, a decimal string beyond.
pub fn json_int(value: &BigInt) -> Value {
    match value.to_i64() {
        Some(v) if v.abs() <= SAFE_INTEGER => json!(v),
        _ => json!(value.to_string()),
    }
}

pub fn json_row(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(json_int).collect())
}

pub fn comma_line(values: &[BigInt]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn csv_text(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for record in records {
        writer.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn json_text(meta: Map<String, Value>) -> String {
    let mut text = serde_json::to_string_pretty(&Value::Object(meta)).expect("serializable");
    text.push('\n');
    text
}

/// Rows `n = 0..` of a triangle; JSON as an array of rows, CSV as `n,k,value`.
pub fn triangle(meta: Map<String, Value>, rows: &[Vec<BigInt>], format: Format) -> String {
    match format {
        Format::Plain => rows.iter().map(|row| comma_line(row) + "\n").collect(),
        Format::Csv => csv_text(
            &["n", "k", "value"],
            rows.iter().enumerate().flat_map(|(n, row)| {
                row.iter().enumerate().map(move |(k, v)| vec![n.to_string(), k.to_string(), v.to_string()])
            }),
        ),
        Format::Json => {
            let mut meta = meta;
            meta.insert("rows".into(), Value::Array(rows.iter().map(|r| json_row(r)).collect()));
            json_text(meta)
        }
    }
}

/// Values indexed from 0 by `index`.
pub fn sequence(meta: Map<String, Value>, index: &str, values: &[BigInt], format: Format) -> String {
    match format {
        Format::Plain => comma_line(values) + "\n",
        Format::Csv => csv_text(
            &[index, "value"],
            values.iter().enumerate().map(|(i, v)| vec![i.to_string(), v.to_string()]),
        ),
        Format::Json => {
            let mut meta = meta;
            meta.insert("values".into(), json_row(values));
            json_text(meta)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_values_become_strings() {
        assert_eq!(json_int(&BigInt::from(SAFE_INTEGER)), json!(9007199254740991i64));
        assert_eq!(json_int(&BigInt::from(-SAFE_INTEGER - 1)), json!("-9007199254740992"));
        assert_eq!(json_int(&(BigInt::from(1) << 70)), json!("1180591620717411303424"));
    }

    #[test]
    fn csv_has_header() {
        let text = sequence(Map::new(), "n", &[BigInt::from(1), BigInt::from(2)], Format::Csv);
        assert_eq!(text, "n,value\n0,1\n1,2\n");
        let rows = vec![vec![BigInt::from(1)], vec![BigInt::from(0), BigInt::from(1)]];
        assert_eq!(triangle(Map::new(), &rows, Format::Plain), "1\n0, 1\n");
    }
}
