//! Check results shared by every verifier and assembled into certificates.
//!
//! A failed check is a result, not an error: verifiers always run to a
//! status. "Skipped" is recorded explicitly so certificates never silently
//! omit a check.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
    Skipped,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Check {
        Check {
            name: name.into(),
            status,
            detail: None,
        }
    }

    pub fn pass(name: impl Into<String>) -> Check {
        Check::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: Some(detail.into()),
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Skipped,
            detail: Some(detail.into()),
        }
    }

    pub fn indeterminate(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Indeterminate,
            detail: Some(detail.into()),
        }
    }

    pub fn of(name: impl Into<String>, ok: bool, detail_on_fail: impl Into<String>) -> Check {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, detail_on_fail)
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

/// True when every check passed (skipped and indeterminate do not pass).
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status.is_pass())
}
