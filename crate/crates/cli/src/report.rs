use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use krasner_core::field::json::descriptor_to_json;
use krasner_core::FieldDescriptor;

/// One JSON document per invocation. Everything except `wall_time_ms` is a
/// function of argv and the seed.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub field: Option<Value>,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub checks: Map<String, Value>,
    pub precision_notes: Vec<String>,
    pub seed: u64,
    pub wall_time_ms: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        RunReport {
            command,
            field: None,
            inputs: Map::new(),
            outputs: Map::new(),
            checks: Map::new(),
            precision_notes: Vec::new(),
            seed,
            wall_time_ms: 0.0,
            started: Some(Instant::now()),
        }
    }

    pub fn field(&mut self, d: &FieldDescriptor) {
        self.field = Some(descriptor_to_json(d));
    }

    pub fn input(&mut self, k: &str, v: impl Into<Value>) {
        self.inputs.insert(k.into(), v.into());
    }

    pub fn output(&mut self, k: &str, v: impl Into<Value>) {
        self.outputs.insert(k.into(), v.into());
    }

    pub fn check(&mut self, k: &str, ok: bool) {
        self.checks.insert(k.into(), Value::Bool(ok));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.precision_notes.push(s.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|v| v.as_bool() == Some(true))
    }

    pub fn finish(&mut self) {
        if let Some(t) = self.started {
            self.wall_time_ms = t.elapsed().as_secs_f64() * 1e3;
        }
    }
}
