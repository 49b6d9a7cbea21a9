//! Flat JSON configuration:
//!
//! ```json
//! {
//!   "sweep_id": "gap-scan",
//!   "m": 10, "delta_tau": 4,
//!   "axis1": "omega", "axis1_min": -25, "axis1_max": 25, "axis1_steps": 201,
//!   "outputs": ["p_m", "p_v"],
//!   "rel_tol": 1e-9,
//!   "output_path": "gap-scan.csv"
//! }
//! ```
//!
//! `outputs` may also be a comma-separated string. Unknown keys are errors.

use std::path::PathBuf;

use serde_json::{Map, Value};

use super::{Axis, Output, Param, SweepSpec};
use crate::error::{Error, Result};

const MAX_AXES: usize = 2;

pub(super) fn parse(text: &str) -> Result<SweepSpec> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
    let Value::Object(mut map) = value else {
        return Err(Error::Config("configuration must be a JSON object".into()));
    };

    let sweep_id = match map.remove("sweep_id") {
        Some(v) => string(&v, "sweep_id")?,
        None => "sweep".to_string(),
    };
    let mut spec = SweepSpec::new(sweep_id);

    for p in Param::ALL {
        if let Some(v) = map.remove(p.name()) {
            spec.fixed.insert(p, number(&v, p.name())?);
        }
    }

    for i in 1..=MAX_AXES {
        let key = format!("axis{i}");
        let Some(name) = map.remove(&key) else {
            for suffix in ["min", "max", "steps"] {
                if map.contains_key(&format!("{key}_{suffix}")) {
                    return Err(Error::Config(format!(
                        "'{key}_{suffix}' given without '{key}'"
                    )));
                }
            }
            continue;
        };
        let param: Param = string(&name, &key)?.parse()?;
        let min = number(
            &take(&mut map, &format!("{key}_min"))?,
            &format!("{key}_min"),
        )?;
        let max = number(
            &take(&mut map, &format!("{key}_max"))?,
            &format!("{key}_max"),
        )?;
        let steps_key = format!("{key}_steps");
        let steps = take(&mut map, &steps_key)?.as_u64().ok_or_else(|| {
            Error::Config(format!("'{steps_key}' must be a non-negative integer"))
        })?;
        spec.axes.push(Axis::new(param, min, max, steps as usize));
    }

    if let Some(v) = map.remove("outputs") {
        spec.outputs = outputs(&v)?;
    }

    let q = &mut spec.quadrature;
    if let Some(v) = map.remove("rel_tol") {
        q.rel_tol = number(&v, "rel_tol")?;
    }
    if let Some(v) = map.remove("abs_tol") {
        q.abs_tol = number(&v, "abs_tol")?;
    }
    if let Some(v) = map.remove("eps_regulator") {
        q.eps_regulator = number(&v, "eps_regulator")?;
    }
    if let Some(v) = map.remove("max_subdivisions") {
        q.max_subdivisions = count(&v, "max_subdivisions")?;
    }
    if let Some(v) = map.remove("oscillation_panels_per_period") {
        q.oscillation_panels_per_period = count(&v, "oscillation_panels_per_period")?;
    }
    if let Some(v) = map.remove("eps_extrapolation_levels") {
        q.eps_extrapolation_levels = count(&v, "eps_extrapolation_levels")?;
    }

    if let Some(v) = map.remove("output_path") {
        spec.output_path = Some(PathBuf::from(string(&v, "output_path")?));
    }
    if let Some(v) = map.remove("note") {
        spec.notes.push(string(&v, "note")?);
    }

    if let Some(key) = map.keys().next() {
        return Err(Error::Config(format!("unknown configuration key '{key}'")));
    }
    let spec = spec.with_defaults();
    spec.validate()?;
    Ok(spec)
}

fn take(map: &mut Map<String, Value>, key: &str) -> Result<Value> {
    map.remove(key)
        .ok_or_else(|| Error::Config(format!("missing key '{key}'")))
}

fn number(v: &Value, key: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Config(format!("'{key}' must be a number, got {v}")))
}

fn count<T: TryFrom<u64>>(v: &Value, key: &str) -> Result<T> {
    v.as_u64()
        .and_then(|n| T::try_from(n).ok())
        .ok_or_else(|| Error::Config(format!("'{key}' must be a non-negative integer, got {v}")))
}

fn string(v: &Value, key: &str) -> Result<String> {
    v.as_str()
        .map(str::to_owned)
        .ok_or_else(|| Error::Config(format!("'{key}' must be a string, got {v}")))
}

fn outputs(v: &Value) -> Result<Vec<Output>> {
    match v {
        Value::String(s) => s
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect(),
        Value::Array(items) => items
            .iter()
            .map(|item| string(item, "outputs")?.parse())
            .collect(),
        _ => Err(Error::Config(format!(
            "'outputs' must be a list or a comma-separated string, got {v}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let spec = parse(
            r#"{
                "sweep_id": "gap",
                "m": 10, "delta_tau": 4,
                "axis1": "omega", "axis1_min": -25, "axis1_max": 25, "axis1_steps": 201,
                "outputs": "p_m, p_v",
                "rel_tol": 1e-8,
                "output_path": "gap.csv"
            }"#,
        )
        .unwrap();
        assert_eq!(spec.sweep_id, "gap");
        assert_eq!(spec.axes[0], Axis::new(Param::Omega, -25.0, 25.0, 201));
        assert_eq!(spec.outputs, vec![Output::PM, Output::PV]);
        assert_eq!(spec.quadrature.rel_tol, 1e-8);
        assert_eq!(spec.fixed[&Param::TauI], 0.0);
        assert_eq!(spec.output_path, Some(PathBuf::from("gap.csv")));
    }

    #[test]
    fn rejects_bad_documents() {
        let ok = r#""m": 10, "omega": 1, "delta_tau": 1, "outputs": ["p_v"],
                    "axis1": "x0", "axis1_min": 0, "axis1_max": 1, "axis1_steps": 2"#;
        assert!(parse(&format!("{{{ok}}}")).is_ok());
        assert!(parse(&format!("{{{ok}, \"colour\": 1}}")).is_err());
        assert!(parse(&format!("{{{ok}, \"tau_f\": 1}}")).is_err());
        assert!(parse(&format!("{{{ok}, \"axis2_min\": 1}}")).is_err());
        assert!(parse(&format!("{{{ok}, \"m\": \"ten\"}}")).is_err());
        assert!(parse("[1, 2]").is_err());
        assert!(parse("{").is_err());
    }
}
