//! Text and JSON rendering of command results.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Renders `value` as one pretty JSON document or as `path: value` lines.
pub fn render<T: Serialize>(value: &T, format: Format) -> String {
    let v = serde_json::to_value(value).expect("reports serialise");
    match format {
        Format::Json => json_document(&v),
        Format::Text => {
            let mut out = String::new();
            flatten("", &v, &mut out);
            out
        }
    }
}

pub fn json_document(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::String(s) if s.contains('\n') => {
            out.push_str(&format!("{path}:\n"));
            for line in s.lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        _ => out.push_str(&format!("{path}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening() {
        let v = serde_json::json!({"a": 1, "b": {"c": [1, 2], "d": null}, "e": [{"f": "x"}]});
        let text = render(&v, Format::Text);
        assert_eq!(text, "a: 1\nb.c: [1, 2]\nb.d: none\ne[0].f: x\n");
    }
}
