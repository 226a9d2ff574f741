//! Output records and their JSON, CSV and table renderings.
//!
//! Reals are printed with 17 significant digits in every format, so the
//! three renderings carry identical values.

use serde_json::{Map, Value};
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// One evaluated quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub value: f64,
    pub est_error: f64,
    pub method: String,
    pub elapsed_ms: f64,
    /// Command-specific extra fields; always present, possibly empty.
    pub extra: Map<String, Value>,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Map<String, Value>) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs,
            value: f64::NAN,
            est_error: f64::NAN,
            method: String::new(),
            elapsed_ms: 0.0,
            extra: Map::new(),
        }
    }
}

/// `{:.16e}` for finite reals; `NaN`, `inf`, `-inf` otherwise.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_num(v: f64) -> String {
    if v.is_finite() {
        fmt17(v)
    } else {
        "null".into()
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// One JSON object per record, keys in a fixed order.
pub fn to_json_line(r: &OutputRecord) -> String {
    format!(
        "{{\"command\":{},\"inputs\":{},\"value\":{},\"est_error\":{},\"method\":{},\"elapsed_ms\":{},\"extra\":{}}}",
        Value::String(r.command.clone()),
        Value::Object(r.inputs.clone()),
        json_num(r.value),
        json_num(r.est_error),
        Value::String(r.method.clone()),
        json_num(r.elapsed_ms),
        Value::Object(r.extra.clone()),
    )
}

fn columns(records: &[OutputRecord]) -> (Vec<String>, Vec<String>) {
    let mut ins: Vec<String> = Vec::new();
    let mut ext: Vec<String> = Vec::new();
    for r in records {
        for k in r.inputs.keys() {
            if !ins.contains(k) {
                ins.push(k.clone());
            }
        }
        for k in r.extra.keys() {
            if !ext.contains(k) {
                ext.push(k.clone());
            }
        }
    }
    (ins, ext)
}

fn rows(records: &[OutputRecord]) -> (Vec<String>, Vec<Vec<String>>) {
    let (ins, ext) = columns(records);
    let mut header = vec!["command".to_string()];
    header.extend(ins.iter().cloned());
    header.extend(["value", "est_error", "method", "elapsed_ms"].map(String::from));
    header.extend(ext.iter().cloned());
    let body = records
        .iter()
        .map(|r| {
            let mut row = vec![r.command.clone()];
            row.extend(ins.iter().map(|k| r.inputs.get(k).map(scalar).unwrap_or_default()));
            row.push(fmt17(r.value));
            row.push(fmt17(r.est_error));
            row.push(r.method.clone());
            row.push(fmt17(r.elapsed_ms));
            row.extend(ext.iter().map(|k| r.extra.get(k).map(scalar).unwrap_or_default()));
            row
        })
        .collect();
    (header, body)
}

pub fn write_records<W: Write>(out: &mut W, records: &[OutputRecord], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", to_json_line(r))?;
            }
        }
        Format::Csv => {
            let (header, body) = rows(records);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for row in body {
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Format::Table => {
            let (header, body) = rows(records);
            let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in &body {
                for (w, c) in width.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&width)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&header))?;
            for row in &body {
                writeln!(out, "{}", line(row))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rec() -> OutputRecord {
        let mut r = OutputRecord::new("gamma cdf", json!({"alpha": 1.0, "n": 2, "x": 0.5}).as_object().unwrap().clone());
        r.value = 0.632_120_558_828_557_7;
        r.est_error = 1e-12;
        r.method = "gamma-integral".into();
        r
    }

    #[test]
    fn json_round_trips() {
        let line = to_json_line(&rec());
        let v: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["value"].as_f64().unwrap(), rec().value);
        assert_eq!(v["inputs"]["n"], 2);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
        let mut r = rec();
        r.value = f64::NAN;
        let v: Value = serde_json::from_str(&to_json_line(&r)).unwrap();
        assert!(v["value"].is_null());
    }

    #[test]
    fn formats_agree() {
        let mut csv = Vec::new();
        write_records(&mut csv, &[rec()], Format::Csv).unwrap();
        let mut table = Vec::new();
        write_records(&mut table, &[rec()], Format::Table).unwrap();
        let s = fmt17(rec().value);
        assert_eq!(s.parse::<f64>().unwrap(), rec().value);
        assert!(String::from_utf8(csv).unwrap().contains(&s));
        assert!(String::from_utf8(table).unwrap().contains(&s));
        assert!(to_json_line(&rec()).contains(&s));
    }
}
