use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// The JSON document every subcommand writes.
///
/// `results` holds the numbers; `provenance` holds the grids, tolerances,
/// radii and solver settings that define them. Empirically fitted constants
/// carry an `empirical_` prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub subcommand: String,
    pub config: Value,
    pub results: Value,
    pub provenance: Value,
    pub version: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Parses a report and checks its shape.
    pub fn parse(text: &str) -> Result<Report, String> {
        let r: Report = serde_json::from_str(text).map_err(|e| e.to_string())?;
        for (name, v) in [("config", &r.config), ("results", &r.results), ("provenance", &r.provenance)] {
            if !v.is_object() {
                return Err(format!("{name} must be an object"));
            }
        }
        if r.config.get("seed").and_then(Value::as_u64).is_none() {
            return Err("config.seed missing".to_string());
        }
        Ok(r)
    }
}

/// Adds entries to a JSON object.
pub(crate) fn extend(target: &mut Value, extra: Map<String, Value>) {
    if let Value::Object(m) = target {
        m.extend(extra);
    }
}
