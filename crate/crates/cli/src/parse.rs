use serde_json::Value;

use krasner_core::extensions::MonicVector;
use krasner_core::field::json::{element_from_json, elements_from_json, parse_descriptor};
use krasner_core::{FieldDescriptor, FieldElement};

use crate::CliError;

/// JSON if it parses, otherwise the raw string (so `3/4` needs no quotes).
pub fn value(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

pub fn field(s: &str) -> Result<FieldDescriptor, CliError> {
    Ok(parse_descriptor(s)?)
}

pub fn element(d: &FieldDescriptor, s: &str) -> Result<FieldElement, CliError> {
    Ok(element_from_json(d, &value(s))?)
}

pub fn elements(d: &FieldDescriptor, s: &str) -> Result<Vec<FieldElement>, CliError> {
    let v = value(s);
    if !v.is_array() {
        return Err(CliError::Usage(format!("expected a JSON array, got `{s}`")));
    }
    Ok(elements_from_json(d, &v)?)
}

pub fn monic(d: &FieldDescriptor, s: &str) -> Result<MonicVector, CliError> {
    Ok(MonicVector::new(d, elements(d, s)?)?)
}

pub fn json_file(path: &str) -> Result<Value, CliError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}
