//! Stable JSON layout shared by every file this crate writes.
//!
//! Top-level objects are printed one key per line; arrays of arrays put one
//! inner array per line; everything deeper is compact. Key order is the
//! struct declaration order, so identical values always serialize to identical
//! bytes.

use serde::Serialize;
use serde_json::Value;

use crate::Error;

pub fn to_layout<T: Serialize>(value: &T) -> Result<String, Error> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Object(map) if depth == 0 && !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, val)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&compact(&Value::String(k.clone())));
                out.push_str(": ");
                write_value(val, depth + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push('}');
        }
        Value::Array(items) if depth <= 1 && items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&compact(item));
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) if depth == 1 && map.values().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("{\n");
            for (i, (k, val)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&compact(&Value::String(k.clone())));
                out.push_str(": ");
                out.push_str(&compact(val));
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push('}');
        }
        other => out.push_str(&compact(other)),
    }
}
