//! JSON fan files.
//!
//! ```json
//! {"dim": 3, "rays": [[1,0,0], ...], "max_cones": [[0,1,2], ...],
//!  "name": "example1", "params": {"a": 2}}
//! ```
//!
//! Coordinates and parameters must be JSON integers; floats are rejected.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};
use thiserror::Error;

use super::{validate, Fan, FanError, RawFan};
use crate::lattice::LatVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanFileError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("invalid fan: {0}")]
    Invalid(#[from] FanError),
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> FanFileError {
    FanFileError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// Parsed contents of a fan file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanFile {
    pub name: Option<String>,
    pub params: BTreeMap<String, BigInt>,
    pub fan: RawFan,
}

fn parse_int(v: &Value, field: &str) -> Result<BigInt, FanFileError> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| field_err(field, format!("expected integer, found {n}"))),
        other => Err(field_err(field, format!("expected integer, found {other}"))),
    }
}

fn parse_index(v: &Value, field: &str) -> Result<usize, FanFileError> {
    parse_int(v, field)?
        .to_usize()
        .ok_or_else(|| field_err(field, "expected nonnegative ray index"))
}

fn as_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, FanFileError> {
    v.as_array()
        .ok_or_else(|| field_err(field, format!("expected array, found {v}")))
}

pub(crate) fn int_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer is a JSON number"))
}

impl FanFile {
    pub fn parse(text: &str) -> Result<FanFile, FanFileError> {
        let root: Value =
            serde_json::from_str(text).map_err(|e| FanFileError::Json(e.to_string()))?;
        Self::from_value(&root)
    }

    pub fn from_value(root: &Value) -> Result<FanFile, FanFileError> {
        let obj = root
            .as_object()
            .ok_or_else(|| field_err("<root>", "expected object"))?;
        for key in obj.keys() {
            if !matches!(
                key.as_str(),
                "dim" | "rays" | "max_cones" | "name" | "params"
            ) {
                return Err(field_err(key.clone(), "unknown field"));
            }
        }
        let dim_value = obj.get("dim").ok_or_else(|| field_err("dim", "missing"))?;
        let dim = parse_index(dim_value, "dim")?;

        let rays_value = obj
            .get("rays")
            .ok_or_else(|| field_err("rays", "missing"))?;
        let mut rays = Vec::new();
        for (i, r) in as_array(rays_value, "rays")?.iter().enumerate() {
            let field = format!("rays[{i}]");
            let coords = as_array(r, &field)?
                .iter()
                .enumerate()
                .map(|(k, x)| parse_int(x, &format!("rays[{i}][{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            rays.push(LatVec::new(coords));
        }

        let cones_value = obj
            .get("max_cones")
            .ok_or_else(|| field_err("max_cones", "missing"))?;
        let mut max_cones = Vec::new();
        for (c, cone) in as_array(cones_value, "max_cones")?.iter().enumerate() {
            let field = format!("max_cones[{c}]");
            let idx = as_array(cone, &field)?
                .iter()
                .enumerate()
                .map(|(k, x)| parse_index(x, &format!("max_cones[{c}][{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            max_cones.push(idx);
        }

        let name = match obj.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => {
                return Err(field_err("name", format!("expected string, found {other}")))
            }
        };
        let mut params = BTreeMap::new();
        match obj.get("params") {
            None | Some(Value::Null) => {}
            Some(Value::Object(m)) => {
                for (k, v) in m {
                    params.insert(k.clone(), parse_int(v, &format!("params.{k}"))?);
                }
            }
            Some(other) => {
                return Err(field_err(
                    "params",
                    format!("expected object, found {other}"),
                ))
            }
        }

        Ok(FanFile {
            name,
            params,
            fan: RawFan {
                dim,
                rays,
                max_cones,
            },
        })
    }

    /// Parses and validates in one step.
    pub fn parse_fan(text: &str) -> Result<Fan, FanFileError> {
        Ok(validate(Self::parse(text)?.fan)?)
    }

    pub fn from_fan(fan: &Fan, name: Option<String>, params: BTreeMap<String, BigInt>) -> FanFile {
        FanFile {
            name,
            params,
            fan: fan.to_raw(),
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("dim".into(), Value::from(self.fan.dim));
        obj.insert(
            "rays".into(),
            Value::Array(
                self.fan
                    .rays
                    .iter()
                    .map(|r| Value::Array(r.coords().iter().map(int_value).collect()))
                    .collect(),
            ),
        );
        obj.insert(
            "max_cones".into(),
            Value::Array(
                self.fan
                    .max_cones
                    .iter()
                    .map(|c| Value::Array(c.iter().map(|&i| Value::from(i)).collect()))
                    .collect(),
            ),
        );
        if let Some(name) = &self.name {
            obj.insert("name".into(), Value::String(name.clone()));
        }
        if !self.params.is_empty() {
            obj.insert(
                "params".into(),
                Value::Object(
                    self.params
                        .iter()
                        .map(|(k, v)| (k.clone(), int_value(v)))
                        .collect(),
                ),
            );
        }
        Value::Object(obj)
    }

    /// Compact single-line JSON: one ray or cone per array element, no
    /// insignificant whitespace.
    pub fn to_json_string(&self) -> String {
        self.to_value().to_string()
    }
}
