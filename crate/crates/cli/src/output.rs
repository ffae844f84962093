use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Printed verbatim instead of the JSON document.
    #[serde(skip)]
    pub raw: Option<String>,
}

impl CommandResult {
    pub fn ok(payload: impl Serialize) -> Self {
        Self::with_status(Status::Ok, payload, Vec::new())
    }

    /// `ok` when `passed`, `violation` with the given diagnostics otherwise.
    pub fn checked(passed: bool, payload: impl Serialize, diagnostics: Vec<String>) -> Self {
        if passed {
            Self::ok(payload)
        } else {
            Self::with_status(Status::Violation, payload, diagnostics)
        }
    }

    pub fn violation(payload: impl Serialize, diagnostics: Vec<String>) -> Self {
        Self::with_status(Status::Violation, payload, diagnostics)
    }

    pub fn error(message: impl std::fmt::Display) -> Self {
        Self::with_status(Status::Error, Value::Null, vec![format!("error: {message}")])
    }

    fn with_status(status: Status, payload: impl Serialize, diagnostics: Vec<String>) -> Self {
        match serde_json::to_value(payload) {
            Ok(payload) => CommandResult {
                status,
                payload,
                diagnostics,
                raw: None,
            },
            Err(e) => Self::error(e),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }

    pub fn emit(&self, compact: bool) -> ExitCode {
        let text = match &self.raw {
            Some(raw) if self.status == Status::Ok => raw.clone(),
            _ => {
                let json = if compact {
                    serde_json::to_string(self)
                } else {
                    serde_json::to_string_pretty(self)
                };
                json.expect("results serialize") + "\n"
            }
        };
        let mut stdout = std::io::stdout().lock();
        if stdout.write_all(text.as_bytes()).is_err() {
            return ExitCode::from(2);
        }
        ExitCode::from(self.exit_code())
    }
}

/// Writes `contents` to `path`, or returns an error result.
pub fn write_file(path: &Path, contents: &str) -> Result<(), CommandResult> {
    std::fs::write(path, contents)
        .map_err(|e| CommandResult::error(format!("{}: {e}", path.display())))
}

pub fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("payload serializes") + "\n"
}
