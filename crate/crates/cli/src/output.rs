use serde_json::Value;

use crate::Format;

pub fn render(payload: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(payload).expect("payloads serialize") + "\n",
        Format::Table => {
            let mut out = String::new();
            table(payload, "", &mut out);
            out
        }
    }
}

/// One `path<TAB>value` line per leaf, paths joined with dots.
fn table(value: &Value, path: &str, out: &mut String) {
    let child = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                table(v, &child(k), out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let cells: Vec<String> = items.iter().map(leaf).collect();
            out.push_str(&format!("{path}\t{}\n", cells.join(" ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                table(v, &child(&i.to_string()), out);
            }
        }
        other => out.push_str(&format!("{path}\t{}\n", leaf(other))),
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
