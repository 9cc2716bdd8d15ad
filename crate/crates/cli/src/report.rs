//! Canonical JSON and aligned text renderings of a report.

use serde_json::Value;

use crate::Report;

fn top(rep: &Report) -> Value {
    serde_json::json!({
        "command": rep.command,
        "input": rep.input,
        "result": rep.result,
        "diagnostics": rep.diagnostics,
        "warnings": rep.warnings,
    })
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(m) if !m.is_empty() => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push_str(": ");
                write_json(&m[*k], indent + 1, out);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(a) if !a.is_empty() => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_json(x, indent + 1, out);
                if i + 1 < a.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).unwrap()),
    }
}

/// Sorted keys, two-space indentation, trailing newline.
pub fn to_json(rep: &Report) -> String {
    let mut out = String::new();
    write_json(&top(rep), 0, &mut out);
    out.push('\n');
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter()
                .map(|x| scalar(x).unwrap())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let width = keys.iter().map(|k| k.len()).max().unwrap_or(0);
            for k in keys {
                match scalar(&m[k]) {
                    Some(s) => out.push_str(&format!("{pad}{k:<width$}  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        write_text(&m[k], indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}]  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap())),
    }
}

/// Aligned `key  value` lines, nested blocks indented.
pub fn to_text(rep: &Report) -> String {
    let mut out = String::new();
    write_text(&top(rep), 0, &mut out);
    out
}
