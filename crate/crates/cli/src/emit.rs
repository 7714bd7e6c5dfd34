//! Rendering of reports as plain text, JSON or CSV.
//!
//! Plain: the `value` field alone on the first line when present, then `key: value`
//! lines, then the table with tab-separated cells.
//! JSON: one object, fields in report order, rows as objects, big integers as strings.
//! CSV: the table with its own header when there is one, else `key,value` rows.

use serde_json::Value;
use std::io::Write;
use supersat::config::Format;
use supersat::report::Report;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn emit_report<W: Write>(report: &Report, format: Format, out: &mut W) -> std::io::Result<()> {
    match format {
        Format::Plain => {
            if let Some(v) = report.get("value") {
                writeln!(out, "{}", scalar(v))?;
            }
            for (k, v) in report.fields.iter().filter(|(k, _)| k != "value") {
                writeln!(out, "{k}: {}", scalar(v))?;
            }
            if let Some(p) = report.pass {
                writeln!(out, "pass: {p}")?;
            }
            if let Some(t) = &report.table {
                writeln!(out, "{}", t.columns.join("\t"))?;
                for r in &t.rows {
                    writeln!(out, "{}", r.join("\t"))?;
                }
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report.to_json())?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            match &report.table {
                Some(t) => {
                    w.write_record(&t.columns)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                }
                None => {
                    w.write_record(["key", "value"])?;
                    for (k, v) in &report.fields {
                        w.write_record([k.as_str(), &scalar(v)])?;
                    }
                    if let Some(p) = report.pass {
                        w.write_record(["pass", &p.to_string()])?;
                    }
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}
