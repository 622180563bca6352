use std::fmt::Write as _;

use reciproca::fmt_g17;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// `{command, inputs, outputs, residuals, status}`.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub residuals: Map<String, Value>,
    pub status: Status,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs,
            outputs: Value::Null,
            residuals: Map::new(),
            status: Status::Pass,
        }
    }

    pub fn outputs(mut self, outputs: impl Serialize) -> Self {
        self.outputs = to_value(outputs);
        self
    }

    pub fn residual(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.to_string(), number(value));
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("outputs".into(), self.outputs.clone());
        m.insert("residuals".into(), Value::Object(self.residuals.clone()));
        m.insert("status".into(), Value::String(self.status.as_str().into()));
        Value::Object(m)
    }
}

pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("output types serialize to JSON")
}

/// Non-finite values have no JSON number form and are written as strings.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(fmt_g17(x)))
}

/// Pretty JSON with sorted keys and `%.17g` floats.
pub fn render_json(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else if let Some(u) = n.as_u64() {
                write!(out, "{u}").unwrap();
            } else {
                out.push_str(&fmt_g17(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            if items.iter().all(|x| matches!(x, Value::Number(_))) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_json(x, depth, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_json(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_json(&map[*k], depth + 1, out);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
    }
}

/// `path = value` lines for records without a dedicated text layout.
pub fn render_flat(v: &Value) -> String {
    let mut out = String::new();
    flatten("", v, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            for k in keys {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, &map[k], out);
            }
        }
        Value::Array(items) if !items.iter().all(|x| matches!(x, Value::Number(_))) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => {
            let mut s = String::new();
            write_json(other, 0, &mut s);
            writeln!(out, "{prefix} = {s}").unwrap();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_sorted_and_floats_g17() {
        let v = json!({"b": 0.1, "a": [1.0, 2.5], "c": {"z": 1, "y": null}});
        let s = render_json(&v);
        assert_eq!(
            s,
            "{\n  \"a\": [1, 2.5],\n  \"b\": 0.10000000000000001,\n  \"c\": {\n    \"y\": null,\n    \"z\": 1\n  }\n}\n"
        );
    }

    #[test]
    fn non_finite_become_strings() {
        assert_eq!(number(f64::INFINITY), Value::String("inf".into()));
    }

    #[test]
    fn flat_rendering() {
        let v = json!({"x": {"y": [1.0, 2.0]}, "s": "ok"});
        assert_eq!(render_flat(&v), "s = \"ok\"\nx.y = [1, 2]\n");
    }
}
