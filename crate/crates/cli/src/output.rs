//! Rendering JSON rows as JSON, CSV or an aligned text table.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

/// Flattens nested objects into dotted keys; other values stay as they are.
pub fn flatten(value: &Value) -> Map<String, Value> {
    fn walk(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, child, out);
                }
            }
            _ => {
                out.insert(prefix.to_string(), v.clone());
            }
        }
    }
    let mut out = Map::new();
    walk("", value, &mut out);
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One JSON document per line.
pub fn write_json<W: Write>(rows: &[Value], mut out: W) -> Result<(), CliError> {
    for row in rows {
        serde_json::to_writer(&mut out, row).map_err(std::io::Error::other)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Header from the first row's flattened keys, in field order.
pub fn write_csv<W: Write>(rows: &[Value], out: W) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_writer(out);
    let flat: Vec<Map<String, Value>> = rows.iter().map(flatten).collect();
    if let Some(first) = flat.first() {
        let header: Vec<&String> = first.keys().collect();
        writer.write_record(&header)?;
        for row in &flat {
            writer.write_record(
                header
                    .iter()
                    .map(|k| row.get(*k).map(cell).unwrap_or_default()),
            )?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Rows as columns; a single row prints as `field  value` lines.
pub fn write_table<W: Write>(rows: &[Value], mut out: W) -> Result<(), CliError> {
    let flat: Vec<Map<String, Value>> = rows.iter().map(flatten).collect();
    let show = |v: &Value| {
        if v.is_null() {
            "null".to_string()
        } else {
            cell(v)
        }
    };
    if flat.len() == 1 {
        let width = flat[0].keys().map(|k| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &flat[0] {
            writeln!(out, "{k:<width$}  {}", show(v))?;
        }
        return Ok(());
    }
    let Some(first) = flat.first() else {
        return Ok(());
    };
    let header: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = flat
        .iter()
        .map(|row| {
            header
                .iter()
                .map(|k| row.get(*k).map(show).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([h.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<&str>| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.iter().map(|h| h.as_str()).collect()))?;
    for row in &cells {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

pub fn write_rows<W: Write>(rows: &[Value], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(rows, out),
        Format::Csv => write_csv(rows, out),
        Format::Table => write_table(rows, out),
    }
}
