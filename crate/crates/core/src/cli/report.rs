use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "latticeforge/1";

/// Envelope written to standard output by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub tool_version: String,
    /// Subcommand name followed by its arguments.
    pub command: Vec<String>,
    /// Hex SHA-256 of the inputs.
    pub input_digest: String,
    pub wall_time_ms: u64,
    pub exit_code: i32,
    pub result: Value,
}

impl RunReport {
    pub fn new(command: Vec<String>, input_digest: String, exit_code: i32, result: Value) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            input_digest,
            wall_time_ms: 0,
            exit_code,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
