//! Deterministic JSON text: sorted keys, floats as `%.15e`, scalar arrays on one line.

use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use crate::configs::IntMatrix;
use crate::verify::{IdentityReport, SampleRecord};

pub fn float(x: f64) -> Value {
    Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![float(z.re), float(z.im)])
}

pub fn complexes(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().copied().map(complex).collect())
}

pub fn ints(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|&k| Value::from(k)).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints(r)).collect())
}

pub fn strings<S: AsRef<str>>(v: &[S]) -> Value {
    Value::Array(v.iter().map(|s| Value::from(s.as_ref())).collect())
}

pub fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

fn sample(s: &SampleRecord) -> Value {
    object([
        ("beta", complexes(&s.beta)),
        ("x", complexes(&s.x)),
        ("lhs", complex(s.lhs)),
        ("rhs", complex(s.rhs)),
        ("residual", float(s.residual)),
    ])
}

pub fn report(r: &IdentityReport) -> Value {
    object([
        ("description", Value::from(r.description.as_str())),
        ("samples", Value::Array(r.samples.iter().map(sample).collect())),
        ("fitted_constant", complex(r.fitted_constant)),
        ("max_residual", float(r.max_residual)),
        ("threshold", float(r.threshold)),
        ("verdict", Value::from(r.verdict.as_str())),
        ("notes", strings(&r.notes)),
    ])
}

fn number(n: &Number) -> String {
    if let Some(i) = n.as_i64() {
        i.to_string()
    } else if let Some(u) = n.as_u64() {
        u.to_string()
    } else {
        format!("{:.15e}", n.as_f64().unwrap_or(f64::NAN))
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Arrays of scalars and of scalar arrays stay on one line.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => {
            items.iter().all(|i| is_scalar(i) || matches!(i, Value::Array(a) if a.iter().all(is_scalar)))
        }
        _ => true,
    }
}

fn write(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&number(n)),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if is_flat(v) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write(item, indent, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                write(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            // serde_json's default map is ordered by key
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
    }
}

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write(v, 0, &mut out);
    out.push('\n');
    out
}
