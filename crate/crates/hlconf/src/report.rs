//! Verification reports.

use std::fmt;

use serde::Serialize;

/// One failing instance of a checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Which condition and which basis tuple.
    pub context: String,
    /// Printed residual (left side minus right side).
    pub residual: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
        }
    }
}

/// Outcome of one named check. The status is derived from the violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check_name: String,
    pub violations: Vec<Violation>,
    /// Wall-clock time, when measured.
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(check_name: impl Into<String>) -> Self {
        Report {
            check_name: check_name.into(),
            violations: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn push(&mut self, context: impl Into<String>, residual: impl Into<String>) {
        self.violations.push(Violation {
            context: context.into(),
            residual: residual.into(),
        });
    }

    /// Appends the violations of `other`, prefixing their contexts.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for v in other.violations {
            self.push(format!("{prefix}: {}", v.context), v.residual);
        }
    }

    pub fn status(&self) -> Status {
        if self.violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One JSON object per line; `timing_ms` is included only when set.
    pub fn to_record(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            check_name: &'a str,
            status: Status,
            violations: &'a [Violation],
            #[serde(skip_serializing_if = "Option::is_none")]
            timing_ms: Option<u64>,
        }
        serde_json::to_string(&Record {
            check_name: &self.check_name,
            status: self.status(),
            violations: &self.violations,
            timing_ms: self.timing_ms,
        })
        .expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}", self.check_name)?;
        if let Some(ms) = self.timing_ms {
            write!(f, " ({ms} ms)")?;
        }
        for v in &self.violations {
            write!(f, "\n  {}: {}", v.context, v.residual)?;
        }
        Ok(())
    }
}
