//! Rendering of command results as pretty text, CSV or JSON.

use std::io::Write;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

/// Renders `value`. JSON keeps the library serialization so reports parse
/// back; pretty and CSV output show integers and sets in decimal.
pub fn render(value: &Value, format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Pretty => Ok(pretty(&simplify(value)).into_bytes()),
        Format::Csv => csv(&simplify(value)),
    }
}

pub fn write(bytes: &[u8], out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
    }
}

/// Replaces serialized factored integers by their decimal value and integer
/// sets by the list of their elements.
pub fn simplify(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            if let Some(n) = as_factored(m) {
                return n;
            }
            if m.len() == 1 {
                if let Some(Value::Array(items)) = m.get("elements") {
                    return Value::Array(items.iter().map(simplify).collect());
                }
            }
            Value::Object(m.iter().map(|(k, v)| (k.clone(), simplify(v))).collect())
        }
        Value::Array(items) => Value::Array(items.iter().map(simplify).collect()),
        other => other.clone(),
    }
}

fn as_factored(m: &Map<String, Value>) -> Option<Value> {
    if m.len() != 2 || !m.contains_key("factors") {
        return None;
    }
    let digits = m.get("value")?.as_array()?;
    let digits: Vec<u32> = digits
        .iter()
        .map(|d| d.as_u64().and_then(|d| u32::try_from(d).ok()))
        .collect::<Option<_>>()?;
    Some(big_to_value(&BigUint::new(digits)))
}

/// A JSON number when it fits in `u64`, a decimal string otherwise.
pub fn big_to_value(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => format_f64(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(_) | Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Shortest round-trip form, in scientific notation away from unit scale.
fn short_f64(x: f64) -> String {
    if x != 0.0 && !(1e-4..1e16).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn pretty_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => short_f64(n.as_f64().unwrap_or(f64::NAN)),
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(pretty_scalar).collect::<Vec<_>>().join(",")
        }
        Value::Array(_) | Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn is_table(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(Value::is_object)
}

fn table_columns(items: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for item in items {
        if let Value::Object(m) = item {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

fn pretty(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            let width = m.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in m {
                match v {
                    Value::Array(items) if is_table(items) => {
                        out.push_str(&format!("{k}:\n"));
                        for line in pretty_table(items).lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{k:<width$}  {}\n", pretty_scalar(v))),
                }
            }
        }
        Value::Array(items) if is_table(items) => out.push_str(&pretty_table(items)),
        Value::Array(items) => {
            for item in items {
                out.push_str(&pretty_scalar(item));
                out.push('\n');
            }
        }
        other => {
            out.push_str(&pretty_scalar(other));
            out.push('\n');
        }
    }
    out
}

fn pretty_table(items: &[Value]) -> String {
    let cols = table_columns(items);
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            cols.iter()
                .map(|c| pretty_scalar(item.get(c).unwrap_or(&Value::Null)))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| {
        let mut s = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(&cols);
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}

fn csv(v: &Value) -> Result<Vec<u8>, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| e.to_string();
    match v {
        Value::Array(items) if is_table(items) => {
            let cols = table_columns(items);
            w.write_record(&cols).map_err(err)?;
            for item in items {
                w.write_record(cols.iter().map(|c| scalar(item.get(c).unwrap_or(&Value::Null))))
                    .map_err(err)?;
            }
        }
        Value::Object(m) => {
            w.write_record(m.keys()).map_err(err)?;
            w.write_record(m.values().map(scalar)).map_err(err)?;
        }
        Value::Array(items) => {
            w.write_record(["value"]).map_err(err)?;
            for item in items {
                w.write_record([scalar(item)]).map_err(err)?;
            }
        }
        other => {
            w.write_record(["value"]).map_err(err)?;
            w.write_record([scalar(other)]).map_err(err)?;
        }
    }
    w.into_inner().map_err(|e| e.to_string())
}
