use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Checked, failed, and deliberately not treated as fatal.
    Waived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub message: String,
    pub witness: Vec<String>,
}

impl Violation {
    pub fn new(message: impl Into<String>, witness: Vec<String>) -> Self {
        Violation {
            message: message.into(),
            witness,
        }
    }
}

/// Outcome of one structural check. Violations are data, never errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub check: String,
    pub status: Status,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn from_violations(check: impl Into<String>, violations: Vec<Violation>) -> Self {
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        ValidationReport {
            check: check.into(),
            status,
            violations,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}
