use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one command. `status` is `Pass` exactly when `details` is empty.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    pub details: Vec<String>,
    #[serde(rename = "elapsed_ms")]
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl RunReport {
    pub fn new(command: &str, details: Vec<String>, elapsed: Duration) -> Self {
        let status = if details.is_empty() { Status::Pass } else { Status::Fail };
        RunReport {
            command: command.to_string(),
            status,
            details,
            elapsed,
            data: None,
        }
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Human-readable trailer printed after a command's own output.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for d in &self.details {
            out.push_str("  ");
            out.push_str(d);
            out.push('\n');
        }
        let status = if self.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!("{}: {status} ({:.2?})", self.command, self.elapsed));
        out
    }
}
