//! Versioned experiment configuration.
//!
//! ```json
//! { "version": "v1",
//!   "base": { "family": "Diagonal", "params": [] },
//!   "schema": { ... },
//!   "window": { "radius": 3, "mesh": 0.05 },
//!   "indices": [10, 100, 1000],
//!   "tol": 0.05,
//!   "seed": 0 }
//! ```
//!
//! Only `version`, `base` and `schema` are required.

use crate::catalog::{descriptor_from_value, descriptor_to_json, SubgroupDescriptor};
use crate::error::{Error, Result};
use crate::metric::validate_indices;
use crate::schema::ConjugatorSchema;
use crate::window::Window;
use serde_json::{Map, Value};

pub const CONFIG_VERSION: &str = "v1";
pub const DEFAULT_TOL: f64 = 0.05;
pub const DEFAULT_INDICES: [u64; 5] = [10, 31, 100, 316, 1000];

const FIELDS: [&str; 7] = ["version", "base", "schema", "window", "indices", "tol", "seed"];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub base: SubgroupDescriptor,
    pub schema: ConjugatorSchema,
    pub window: Window,
    pub indices: Vec<u64>,
    pub tol: f64,
    pub seed: u64,
}

fn field_err(field: &str, message: impl ToString) -> Error {
    Error::InvalidConfig { field: field.to_string(), message: message.to_string() }
}

/// Nested errors keep their own message but are attributed to the field.
fn in_field<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidConfig { field: inner, message } => field_err(&format!("{field}.{inner}"), message),
        // Values converted from an already parsed tree carry no position.
        Error::Json { line: 0, message, .. } => field_err(field, message),
        other => field_err(field, other),
    })
}

fn required<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a Value> {
    obj.get(field).ok_or_else(|| field_err(field, "missing required field"))
}

impl ExperimentConfig {
    pub fn new(base: SubgroupDescriptor, schema: ConjugatorSchema) -> Self {
        ExperimentConfig {
            base,
            schema,
            window: Window::default(),
            indices: DEFAULT_INDICES.to_vec(),
            tol: DEFAULT_TOL,
            seed: 0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| field_err("$", "expected a JSON object"))?;
        if let Some(k) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
            return Err(field_err(k, "unknown field"));
        }
        match required(obj, "version")?.as_str() {
            Some(CONFIG_VERSION) => {}
            _ => return Err(field_err("version", format!("expected \"{CONFIG_VERSION}\""))),
        }
        let base = in_field("base", descriptor_from_value(required(obj, "base")?))?;
        let schema: ConjugatorSchema = in_field(
            "schema",
            serde_json::from_value(required(obj, "schema")?.clone()).map_err(Error::from),
        )?;
        in_field("schema", schema.validate())?;

        let mut cfg = ExperimentConfig::new(base, schema);
        if let Some(w) = obj.get("window") {
            let w: Window = in_field("window", serde_json::from_value(w.clone()).map_err(Error::from))?;
            in_field("window", w.validate())?;
            cfg.window = w;
        }
        if let Some(ix) = obj.get("indices") {
            let ix: Vec<u64> = in_field("indices", serde_json::from_value(ix.clone()).map_err(Error::from))?;
            in_field("indices", validate_indices(&ix))?;
            cfg.indices = ix;
        }
        if let Some(t) = obj.get("tol") {
            cfg.tol = t
                .as_f64()
                .filter(|t| t.is_finite() && *t > 0.0)
                .ok_or_else(|| field_err("tol", "expected a positive number"))?;
        }
        if let Some(s) = obj.get("seed") {
            cfg.seed = s.as_u64().ok_or_else(|| field_err("seed", "expected a non-negative integer"))?;
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "version": CONFIG_VERSION,
            "base": descriptor_to_json(&self.base),
            "schema": self.schema.to_json(),
            "window": self.window,
            "indices": self.indices,
            "tol": self.tol,
            "seed": self.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::group::Vec2;
    use crate::schema::Growth;

    fn sample() -> ExperimentConfig {
        let schema = ConjugatorSchema::translation(Vec2::new(1.0, 2.0), Growth::power(1.0, 1.0), "(n, 2n)");
        ExperimentConfig::new(SubgroupDescriptor::new(Family::Diagonal), schema)
    }

    #[test]
    fn round_trips() {
        let c = sample();
        let text = c.to_json().to_string();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), c);
    }

    #[test]
    fn reports_the_offending_field() {
        let mut v = sample().to_json();
        v["tol"] = serde_json::json!(-1.0);
        let e = ExperimentConfig::from_value(&v).unwrap_err();
        assert!(matches!(e, Error::InvalidConfig { ref field, .. } if field == "tol"), "{e}");

        let mut v = sample().to_json();
        v["indices"] = serde_json::json!([10, 5]);
        let e = ExperimentConfig::from_value(&v).unwrap_err();
        assert!(matches!(e, Error::InvalidConfig { ref field, .. } if field == "indices"), "{e}");

        let mut v = sample().to_json();
        v.as_object_mut().unwrap().remove("base");
        let e = ExperimentConfig::from_value(&v).unwrap_err();
        assert!(matches!(e, Error::InvalidConfig { ref field, .. } if field == "base"), "{e}");

        let mut v = sample().to_json();
        v["colour"] = serde_json::json!(1);
        assert!(ExperimentConfig::from_value(&v).is_err());
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let e = ExperimentConfig::from_json("{\n  \"version\": \"v1\",\n  oops }").unwrap_err();
        assert!(matches!(e, Error::Json { line: 3, .. }), "{e}");
    }

    #[test]
    fn defaults_fill_optional_fields() {
        let c = sample();
        let v = serde_json::json!({
            "version": "v1",
            "base": descriptor_to_json(&c.base),
            "schema": c.schema.to_json(),
        });
        let parsed = ExperimentConfig::from_value(&v).unwrap();
        assert_eq!(parsed.window, Window::default());
        assert_eq!(parsed.indices, DEFAULT_INDICES.to_vec());
        assert_eq!(parsed.seed, 0);
    }
}
