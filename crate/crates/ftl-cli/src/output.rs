//! Report rendering. Every subcommand produces either a table of
//! [`ReportRow`]s or a single record of named fields; both serialize to CSV
//! and to JSON carrying field-for-field identical data.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use ftl_core::rational::Rational;
use ftl_core::report::{ExactValue, ReportRow};
use serde_json::{json, Map, Value};

use crate::config::{OutputFormat, RunConfig};

/// One named field of a record report.
#[derive(Debug, Clone)]
pub enum Field {
    Int(i128),
    Real(f64),
    Bool(bool),
    Text(String),
    Exact(ExactValue),
}

/// What a subcommand hands back for rendering.
#[derive(Debug)]
pub enum Report {
    /// Rows under the fixed `x,exact,predicted,normalized_error,ratio,elapsed_ms` header.
    Table(Vec<ReportRow>),
    /// A single row under a command-specific header.
    Record(Vec<(&'static str, Field)>),
}

/// Renders with 12 significant digits, fixed notation near unit scale and
/// scientific otherwise. The output survives an f64 round trip unchanged at
/// this precision, so CSV and JSON agree bit-for-bit after reparsing.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return String::from("0");
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        trim_zeros_exp(format!("{v:.11e}"))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    String::from(t)
}

fn trim_zeros_exp(s: String) -> String {
    match s.split_once('e') {
        Some((mant, exp)) => format!("{}e{exp}", trim_zeros(String::from(mant))),
        None => s,
    }
}

/// Decimal expansion truncated to 18 fractional digits; a trailing `~` marks
/// a truncated (inexact) rendering.
pub fn render_rational(r: &Rational) -> String {
    let mut out = String::new();
    if r < &Rational::from_integer(0) {
        out.push('-');
    }
    let num = r.numer().unsigned_abs();
    let den = r.denom().unsigned_abs();
    out.push_str(&(num / den).to_string());
    let mut rem = num % den;
    if rem == 0 {
        return out;
    }
    out.push('.');
    let mut inexact = true;
    let mut digits = String::new();
    for _ in 0..18 {
        match rem.checked_mul(10) {
            Some(r10) => {
                digits.push(char::from(b'0' + (r10 / den) as u8));
                rem = r10 % den;
            }
            None => break,
        }
        if rem == 0 {
            inexact = false;
            break;
        }
    }
    let kept = digits.trim_end_matches('0');
    out.push_str(if kept.is_empty() { "0" } else { kept });
    if inexact {
        out.push('~');
    }
    out
}

pub fn render_exact(v: &ExactValue) -> String {
    match v {
        ExactValue::Int(i) => i.to_string(),
        ExactValue::Ratio(r) => render_rational(r),
        ExactValue::Real(f) => sig12(*f),
    }
}

fn render_field(f: &Field) -> String {
    match f {
        Field::Int(i) => i.to_string(),
        Field::Real(v) => sig12(*v),
        Field::Bool(b) => b.to_string(),
        Field::Text(s) => s.clone(),
        Field::Exact(v) => render_exact(v),
    }
}

/// Reparses the 12-digit rendering so JSON numbers match the CSV text.
fn real_json(v: f64) -> Value {
    let rendered: f64 = sig12(v).parse().unwrap_or(v);
    serde_json::Number::from_f64(rendered).map_or(Value::Null, Value::Number)
}

fn exact_json(v: &ExactValue) -> Value {
    match v {
        ExactValue::Int(i) => {
            i64::try_from(*i).map_or_else(|_| Value::String(i.to_string()), Value::from)
        }
        // String form keeps exact numerators that exceed f64 precision.
        ExactValue::Ratio(r) => Value::String(render_rational(r)),
        ExactValue::Real(f) => real_json(*f),
    }
}

fn field_json(f: &Field) -> Value {
    match f {
        Field::Int(i) => {
            i64::try_from(*i).map_or_else(|_| Value::String(i.to_string()), Value::from)
        }
        Field::Real(v) => real_json(*v),
        Field::Bool(b) => Value::Bool(*b),
        Field::Text(s) => Value::String(s.clone()),
        Field::Exact(v) => exact_json(v),
    }
}

/// Quotes a CSV cell only when it contains a delimiter, quote, or newline.
fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        String::from(s)
    }
}

const ROW_HEADER: [&str; 6] = [
    "x",
    "exact",
    "predicted",
    "normalized_error",
    "ratio",
    "elapsed_ms",
];

fn row_cells(row: &ReportRow) -> [String; 6] {
    [
        render_rational(&row.x),
        render_exact(&row.exact),
        sig12(row.predicted),
        sig12(row.normalized_error),
        sig12(row.ratio),
        row.elapsed_ms.to_string(),
    ]
}

fn row_json(row: &ReportRow) -> Value {
    let mut m = Map::new();
    m.insert(String::from("x"), Value::String(render_rational(&row.x)));
    m.insert(String::from("exact"), exact_json(&row.exact));
    m.insert(String::from("predicted"), real_json(row.predicted));
    m.insert(
        String::from("normalized_error"),
        real_json(row.normalized_error),
    );
    m.insert(String::from("ratio"), real_json(row.ratio));
    m.insert(String::from("elapsed_ms"), Value::from(row.elapsed_ms));
    Value::Object(m)
}

pub fn to_csv(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Table(rows) => {
            out.push_str(&ROW_HEADER.join(","));
            out.push('\n');
            for row in rows {
                let cells = row_cells(row);
                let line: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        Report::Record(fields) => {
            let names: Vec<&str> = fields.iter().map(|(n, _)| *n).collect();
            out.push_str(&names.join(","));
            out.push('\n');
            let line: Vec<String> = fields
                .iter()
                .map(|(_, f)| csv_cell(&render_field(f)))
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
    }
    out
}

pub fn to_json(report: &Report, command: &str, config: &RunConfig, wall_ms: u128) -> String {
    let meta = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "sieve_limit": config.sieve_limit,
        "c_constant": real_json(config.c_constant),
        "tol": real_json(config.tol),
        "threads": config.threads,
        "wall_ms": u64::try_from(wall_ms).unwrap_or(u64::MAX),
    });
    let body = match report {
        Report::Table(rows) => {
            let items: Vec<Value> = rows.iter().map(row_json).collect();
            json!({ "meta": meta, "rows": items })
        }
        Report::Record(fields) => {
            let mut m = Map::new();
            for (name, f) in fields {
                m.insert(String::from(*name), field_json(f));
            }
            json!({ "meta": meta, "record": Value::Object(m) })
        }
    };
    let mut s = serde_json::to_string_pretty(&body).expect("report JSON serializes");
    s.push('\n');
    s
}

/// Writes the rendered report to the configured sink.
pub fn write_report(
    report: &Report,
    command: &str,
    config: &RunConfig,
    wall_ms: u128,
) -> io::Result<()> {
    let text = match config.output {
        OutputFormat::Csv => to_csv(report),
        OutputFormat::Json => to_json(report, command, config, wall_ms),
    };
    match &config.output_path {
        Some(path) => write_file(path, &text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn write_file(path: &Path, text: &str) -> io::Result<()> {
    fs::write(path, text)
}
