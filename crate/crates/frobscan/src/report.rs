//! Report rendering. JSON is canonical; text is for people; CSV flattens
//! the report's table (or, lacking one, its scalar fields) into rows.
//! Floats carry at most 15 significant digits in every format, and every
//! rendering ends with a newline.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: Value,
    pub table: Option<(Vec<String>, Vec<Vec<Value>>)>,
    /// False when the report records a failed verification.
    pub ok: bool,
}

impl Report {
    pub fn new<T: Serialize>(body: &T) -> Self {
        let body = serde_json::to_value(body).expect("reports serialize to JSON");
        Report {
            body: round_floats(body),
            table: None,
            ok: true,
        }
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<Value>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(round_floats).collect())
            .collect();
        self.table = Some((header.iter().map(|h| h.to_string()).collect(), rows));
        self
    }

    pub fn ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json_line(&self.body),
            Format::Text => {
                let mut out = String::new();
                text(&self.body, 0, &mut out);
                if out.is_empty() || !out.ends_with('\n') {
                    out.push('\n');
                }
                out
            }
            Format::Csv => match &self.table {
                Some((header, rows)) => csv_rows(header, rows),
                None => {
                    let mut flat = Vec::new();
                    flatten("", &self.body, &mut flat);
                    let rows = flat
                        .into_iter()
                        .map(|(k, v)| vec![Value::String(k), v])
                        .collect::<Vec<_>>();
                    csv_rows(&["key".into(), "value".into()], &rows)
                }
            },
        }
    }
}

/// `{"error": {"code", "message", ...extra}}` in JSON; `error[code]: message` otherwise.
pub fn render_error(
    code: &str,
    message: &str,
    extra: Option<(&str, Value)>,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let mut e = Map::new();
            e.insert("code".into(), Value::String(code.into()));
            e.insert("message".into(), Value::String(message.into()));
            if let Some((k, v)) = extra {
                e.insert(k.into(), round_floats(v));
            }
            let mut outer = Map::new();
            outer.insert("error".into(), Value::Object(e));
            json_line(&Value::Object(outer))
        }
        _ => format!("error[{code}]: {}\n", message.trim_end()),
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// `x` rounded to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round15(x)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        v => v,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a)
            if a.iter().all(|x| {
                x.as_array()
                    .is_some_and(|r| r.iter().all(|c| !c.is_object() && !c.is_array()))
            }) && a.len() <= 8 =>
        {
            Some(format!(
                "[{}]",
                a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
            ))
        }
        _ => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                match scalar(v) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for item in a {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text(item, indent + 1, out);
                    }
                }
            }
        }
        v => {
            let _ = writeln!(out, "{pad}{}", scalar(v).unwrap_or_default());
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(o) => o.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        v => out.push((prefix.to_string(), v.clone())),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        v => serde_json::to_string(v).expect("values serialize"),
    }
}

fn csv_rows(header: &[String], rows: &[Vec<Value>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r.iter().map(cell)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 cells")
}
