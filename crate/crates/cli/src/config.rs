//! Config ingestion and serialization.
//!
//! The wire format is a single JSON document with canonical field names:
//!
//! ```json
//! {
//!   "fiber_dimension": 1,
//!   "base": "whole_plane",
//!   "atoms": [ { "point": [0.0, 0.0], "weight": [1, 2] } ],
//!   "continuous_part": false,
//!   "gamma": "auto"
//! }
//! ```
//!
//! Rationals ride as two-element integer arrays `[p, q]`; declared
//! irrationals as `{"decimal": "...", "irrational": true}`. Serialization
//! preserves that dichotomy and the decimal strings verbatim, so configs
//! round-trip bit-exactly.

use hartogs_core::{Atom, BaseKind, GammaSpec, WeightConfig, WeightValue};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::CliError;

fn schema_err(path: &str, msg: impl AsRef<str>) -> CliError {
    CliError::Schema(format!("{path}: {}", msg.as_ref()))
}

/// Parses and validates a config document, with field-precise diagnostics
/// (JSON syntax errors carry line and column).
pub fn parse_config(text: &str) -> Result<WeightConfig, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Schema(format!("config: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema_err("config", "expected a JSON object"))?;

    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "fiber_dimension" | "base" | "atoms" | "continuous_part" | "gamma"
        ) {
            return Err(schema_err(key, "unknown field"));
        }
    }

    let fiber_dimension = match obj.get("fiber_dimension") {
        None => 1,
        Some(v) => v
            .as_u64()
            .filter(|n| (1..=u64::from(u32::MAX)).contains(n))
            .ok_or_else(|| schema_err("fiber_dimension", "expected an integer >= 1"))?
            as u32,
    };

    let base_kind = match obj.get("base") {
        None => BaseKind::WholePlane,
        Some(v) => match v.as_str() {
            Some("whole_plane") => BaseKind::WholePlane,
            Some("bounded") => BaseKind::BoundedBase,
            Some("nonpolar_complement") => BaseKind::NonpolarComplement,
            Some("polar_complement_harmonic") => BaseKind::PolarComplementHarmonicCase,
            _ => {
                return Err(schema_err(
                    "base",
                    "expected one of whole_plane | bounded | nonpolar_complement | polar_complement_harmonic",
                ))
            }
        },
    };

    let continuous_part = match obj.get("continuous_part") {
        None => false,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| schema_err("continuous_part", "expected a boolean"))?,
    };

    let mut atoms = Vec::new();
    if let Some(v) = obj.get("atoms") {
        let list = v
            .as_array()
            .ok_or_else(|| schema_err("atoms", "expected a list"))?;
        for (i, entry) in list.iter().enumerate() {
            atoms.push(parse_atom(entry, &format!("atoms[{i}]"))?);
        }
    }

    let gamma = match obj.get("gamma") {
        None => GammaSpec::Auto,
        Some(Value::String(s)) if s == "auto" => GammaSpec::Auto,
        Some(v) => GammaSpec::Explicit(parse_weight_value(v, "gamma")?),
    };

    WeightConfig::new(fiber_dimension, atoms, continuous_part, gamma, base_kind)
        .map_err(|e| CliError::Schema(format!("config: {e}")))
}

fn parse_atom(value: &Value, path: &str) -> Result<Atom, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema_err(path, "expected an object {point, weight}"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "point" | "weight") {
            return Err(schema_err(&format!("{path}.{key}"), "unknown field"));
        }
    }
    let point = obj
        .get("point")
        .ok_or_else(|| schema_err(path, "missing point"))?;
    let coords = point
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| schema_err(&format!("{path}.point"), "expected [re, im]"))?;
    let re = coords[0]
        .as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| schema_err(&format!("{path}.point[0]"), "expected a finite number"))?;
    let im = coords[1]
        .as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| schema_err(&format!("{path}.point[1]"), "expected a finite number"))?;
    let weight = parse_weight_value(
        obj.get("weight")
            .ok_or_else(|| schema_err(path, "missing weight"))?,
        &format!("{path}.weight"),
    )?;
    Atom::new(Complex64::new(re, im), weight).map_err(|e| schema_err(path, e.to_string()))
}

fn parse_weight_value(value: &Value, path: &str) -> Result<WeightValue, CliError> {
    match value {
        Value::Array(pair) => {
            if pair.len() != 2 {
                return Err(schema_err(path, "rational must be a two-element array [p, q]"));
            }
            let p = pair[0]
                .as_i64()
                .ok_or_else(|| schema_err(path, "numerator must be a 64-bit integer"))?;
            let q = pair[1]
                .as_i64()
                .filter(|&q| q > 0)
                .ok_or_else(|| schema_err(path, "denominator must be a positive 64-bit integer"))?;
            WeightValue::rational(p, q).map_err(|e| schema_err(path, e.to_string()))
        }
        Value::Object(obj) => {
            for key in obj.keys() {
                if !matches!(key.as_str(), "decimal" | "irrational") {
                    return Err(schema_err(&format!("{path}.{key}"), "unknown field"));
                }
            }
            let decimal = obj
                .get("decimal")
                .and_then(Value::as_str)
                .ok_or_else(|| schema_err(path, "missing decimal string"))?;
            let declared = obj
                .get("irrational")
                .and_then(Value::as_bool)
                .ok_or_else(|| schema_err(path, "missing \"irrational\": true marker"))?;
            if !declared {
                return Err(schema_err(
                    path,
                    "decimal weights must carry \"irrational\": true; use [p, q] for rationals",
                ));
            }
            WeightValue::irrational(decimal).map_err(|e| schema_err(path, e.to_string()))
        }
        _ => Err(schema_err(
            path,
            "expected [p, q] or {\"decimal\": \"...\", \"irrational\": true}",
        )),
    }
}

/// Serializes back to the wire format; `parse_config` of the output
/// reproduces the config exactly.
pub fn serialize_config(config: &WeightConfig) -> Value {
    let atoms: Vec<Value> = config
        .atoms()
        .iter()
        .map(|a| {
            json!({
                "point": [a.point.re, a.point.im],
                "weight": weight_value_to_json(&a.weight),
            })
        })
        .collect();
    let gamma = match config.gamma_spec() {
        GammaSpec::Auto => Value::String("auto".into()),
        GammaSpec::Explicit(g) => weight_value_to_json(g),
    };
    let base = match config.base_kind() {
        BaseKind::WholePlane => "whole_plane",
        BaseKind::BoundedBase => "bounded",
        BaseKind::NonpolarComplement => "nonpolar_complement",
        BaseKind::PolarComplementHarmonicCase => "polar_complement_harmonic",
    };
    let mut map = Map::new();
    map.insert("atoms".into(), Value::Array(atoms));
    map.insert("base".into(), Value::String(base.into()));
    map.insert(
        "continuous_part".into(),
        Value::Bool(config.continuous_part_present()),
    );
    map.insert(
        "fiber_dimension".into(),
        Value::from(config.fiber_dimension()),
    );
    map.insert("gamma".into(), gamma);
    Value::Object(map)
}

pub fn weight_value_to_json(v: &WeightValue) -> Value {
    match v {
        WeightValue::Rational(r) => {
            let p = i64::try_from(r.numer().clone()).unwrap_or(0);
            let q = i64::try_from(r.denom().clone()).unwrap_or(1);
            json!([p, q])
        }
        WeightValue::Irrational { decimal, .. } => {
            json!({ "decimal": decimal, "irrational": true })
        }
    }
}
