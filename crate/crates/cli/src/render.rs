//! Plain-text rendering of JSON reports. Field elements, stored as
//! `{"conductor", "coeffs"}` records, print in `z` notation and matrices
//! print one row per line.

use b3rep::field::{parse_rational, CycloElement};
use serde_json::Value;

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    node(report, 0, &mut out);
    out
}

fn element(v: &Value) -> Option<CycloElement> {
    let obj = v.as_object()?;
    if obj.len() != 2 {
        return None;
    }
    let conductor = u32::try_from(obj.get("conductor")?.as_u64()?).ok()?;
    let coeffs = obj
        .get("coeffs")?
        .as_array()?
        .iter()
        .map(|c| parse_rational(c.as_str()?).ok())
        .collect::<Option<Vec<_>>>()?;
    CycloElement::new(conductor, &coeffs).ok()
}

fn scalar(v: &Value) -> Option<String> {
    if let Some(e) = element(v) {
        return Some(e.to_string());
    }
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts = items.iter().map(scalar).collect::<Option<Vec<_>>>()?;
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Object(_) => None,
    }
}

/// Rows of a matrix of scalars, aligned by column.
fn matrix_rows(v: &Value) -> Option<Vec<String>> {
    let rows = v.as_array()?;
    if rows.is_empty() || !rows.iter().all(|r| r.as_array().is_some_and(|r| !r.is_empty())) {
        return None;
    }
    let cells = rows
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|c| element(c).map(|e| e.to_string())).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let cols = cells[0].len();
    let widths: Vec<usize> =
        (0..cols).map(|j| cells.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    Some(
        cells
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().enumerate().map(|(j, s)| format!("{s:>w$}", w = widths[j])).collect();
                format!("[ {} ]", parts.join("  "))
            })
            .collect(),
    )
}

fn node(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if let Some(rows) = matrix_rows(item) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for r in rows {
                        out.push_str(&format!("{pad}  {r}\n"));
                    }
                } else if let Some(s) = scalar(item) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    node(item, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{pad}[{i}]\n"));
                node(item, indent + 2, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
