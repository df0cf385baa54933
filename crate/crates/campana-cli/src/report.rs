//! Aligned plain-text rendering of the JSON reports for `--format text`.

use serde_json::Value;

pub fn render(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn render_into(value: &Value, level: usize, out: &mut String) {
    match value {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (key, val) in map {
                indent(level, out);
                if is_scalar(val) {
                    out.push_str(&format!("{key:width$}  {}\n", scalar(val)));
                } else {
                    out.push_str(key);
                    out.push('\n');
                    render_into(val, level + 1, out);
                }
            }
        }
        Value::Array(items) => {
            if items.iter().all(is_scalar) {
                indent(level, out);
                let line: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("[{}]\n", line.join(", ")));
            } else {
                for (i, item) in items.iter().enumerate() {
                    indent(level, out);
                    out.push_str(&format!("- [{i}]\n"));
                    render_into(item, level + 1, out);
                }
            }
        }
        scalar_value => {
            indent(level, out);
            out.push_str(&scalar(scalar_value));
            out.push('\n');
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_))
        && !matches!(v, Value::Array(items) if !items.iter().all(is_scalar))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let line: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", line.join(", "))
        }
        other => other.to_string(),
    }
}
