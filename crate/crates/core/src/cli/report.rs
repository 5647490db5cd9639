//! Versioned report envelope.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub command: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub report: Value,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Envelope {
    pub fn new(command: &str, passed: bool, report: impl Serialize, text: Vec<String>) -> Envelope {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            passed,
            error: None,
            report: serde_json::to_value(report).unwrap_or(Value::Null),
            text,
        }
    }

    pub fn failure(command: &str, error: String) -> Envelope {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            passed: false,
            text: vec![format!("error: {error}")],
            error: Some(error),
            report: Value::Null,
        }
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(if self.passed { "PASS\n" } else { "FAIL\n" });
        out
    }
}
