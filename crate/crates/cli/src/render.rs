//! CSV and table views, both derived from the JSON document.

use serde_json::Value;

use crate::config::OutputFormat;

pub fn render(document: &Value, format: OutputFormat, precision: usize) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(document).expect("valid JSON value");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in flatten(document, precision) {
                s.push_str(&csv_field(&k));
                s.push(',');
                s.push_str(&csv_field(&v));
                s.push('\n');
            }
            s
        }
        OutputFormat::Table => {
            let rows = flatten(document, precision);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in rows {
                s.push_str(&format!("{k:<width$}  {v}\n"));
            }
            s
        }
    }
}

/// `(path, value)` rows in document order, e.g. `spectrum.values[2]`.
pub fn flatten(document: &Value, precision: usize) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    walk(document, String::new(), precision, &mut rows);
    rows
}

fn walk(v: &Value, path: String, precision: usize, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(child, p, precision, rows);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                walk(child, format!("{path}[{i}]"), precision, rows);
            }
        }
        Value::Object(_) => rows.push((path, "{}".into())),
        Value::Array(_) => rows.push((path, "[]".into())),
        Value::Number(n) => rows.push((path, format_number(n, precision))),
        Value::String(s) => rows.push((path, s.clone())),
        Value::Bool(b) => rows.push((path, b.to_string())),
        Value::Null => rows.push((path, "null".into())),
    }
}

fn format_number(n: &serde_json::Number, precision: usize) -> String {
    if n.is_i64() || n.is_u64() {
        return n.to_string();
    }
    let x = n.as_f64().unwrap_or(f64::NAN);
    if x == 0.0 {
        return "0".into();
    }
    if x.abs() < 1e-4 || x.abs() >= 1e9 {
        let s = format!("{x:.precision$e}");
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let s = format!("{x:.precision$}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.into()
    }
}
