use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};
use toricnef::catalog::Params;
use toricnef::lattice::Rat;

/// Version of the `--json` envelope and result layouts.
pub const SCHEMA_VERSION: u64 = 1;

/// Result of one command on one fan.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// Set for predicates; a `false` under `--assert` exits 2.
    pub truth: Option<bool>,
}

impl Outcome {
    pub fn predicate(b: bool) -> Outcome {
        Outcome {
            text: b.to_string(),
            json: Value::Bool(b),
            truth: Some(b),
        }
    }

    pub fn value(text: String, json: Value) -> Outcome {
        Outcome {
            text,
            json,
            truth: None,
        }
    }
}

pub fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer is a JSON number"))
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

/// Integers as numbers, other rationals as `"p/q"` strings.
pub fn rat(x: &Rat) -> Value {
    if x.is_integer() {
        int(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn rats(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn params_json(p: &Params) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), int(v))).collect())
}

/// `a=1 b=-2`, in name order.
pub fn params_text(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", join(xs, ","))
}

pub fn envelope(command: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut obj = Map::new();
    obj.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    obj.insert("command".into(), Value::String(command.into()));
    for (k, v) in fields {
        obj.insert(k.into(), v);
    }
    Value::Object(obj)
}

pub fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}
