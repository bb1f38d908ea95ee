use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified claim. For quantitative checks `status` is `pass` exactly
/// when `expected == actual`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub p: u32,
    pub params: Value,
    pub expected: Value,
    pub actual: Value,
    pub status: Status,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn compare(id: impl Into<String>, p: u32, params: Value, expected: impl Serialize, actual: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let actual = serde_json::to_value(actual).unwrap_or(Value::Null);
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        CheckResult {
            check_id: id.into(),
            p,
            params,
            expected,
            actual,
            status,
            elapsed_ms: 0,
            note: None,
        }
    }

    /// A reported measurement with no expected value.
    pub fn observation(id: impl Into<String>, p: u32, params: Value, actual: impl Serialize) -> Self {
        CheckResult {
            check_id: id.into(),
            p,
            params,
            expected: Value::Null,
            actual: serde_json::to_value(actual).unwrap_or(Value::Null),
            status: Status::Pass,
            elapsed_ms: 0,
            note: Some("observation".into()),
        }
    }

    pub fn skipped(id: impl Into<String>, p: u32, params: Value, reason: impl Into<String>) -> Self {
        CheckResult {
            check_id: id.into(),
            p,
            params,
            expected: Value::Null,
            actual: Value::Null,
            status: Status::Skipped,
            elapsed_ms: 0,
            note: Some(reason.into()),
        }
    }

    pub fn errored(id: impl Into<String>, p: u32, params: Value, err: impl ToString) -> Self {
        CheckResult {
            check_id: id.into(),
            p,
            params,
            expected: Value::Null,
            actual: Value::Null,
            status: Status::Fail,
            elapsed_ms: 0,
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
