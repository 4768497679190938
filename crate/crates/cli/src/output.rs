//! JSON encoding of results. Rationals become strings `p/q` in lowest
//! terms (`p` when integral); integers are numbers when exactly
//! representable in a double, strings otherwise.

use ahg_core::cone::Face;
use ahg_core::{Integer, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

const SAFE: i64 = (1 << 53) - 1;

pub const SCHEMA_VERSION: &str = "1";

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn integer(x: &Integer) -> Value {
    match x.to_i64() {
        Some(i) if (-SAFE..=SAFE).contains(&i) => json!(i),
        _ => Value::String(x.to_string()),
    }
}

pub fn small(x: i64) -> Value {
    integer(&Integer::from(x))
}

pub fn smalls(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|&x| small(x)).collect())
}

/// Column indices are reported 1-based, matching `a_1, …, a_n`.
pub fn columns(cols: &[usize]) -> Value {
    json!(cols.iter().map(|j| j + 1).collect::<Vec<_>>())
}

pub fn face(f: &Face) -> Value {
    json!({
        "columns": columns(&f.columns),
        "dim": f.dim,
        "facets": f.facets.iter().map(|s| s + 1).collect::<Vec<_>>(),
    })
}

/// The full output document.
pub fn envelope(command: &str, input: Value, result: Value, diagnostics: Vec<String>) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": input,
        "result": result,
        "diagnostics": diagnostics,
    })
}

pub fn error(code: &str, detail: &str) -> Value {
    json!({ "error": code, "detail": detail })
}
