//! Machine-readable run reports: one record per check, stable JSON schema.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// the statement being verified, in words
    pub paper_ref: String,
    pub status: Status,
    pub kind: CheckKind,
    pub value: Value,
    pub target: Value,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub elapsed_ms: u64,
}

/// JSON has no NaN/inf; those become null.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl CheckRecord {
    pub fn exact(name: impl Into<String>, statement: &str, ok: bool, value: Value, target: Value) -> Self {
        CheckRecord {
            name: name.into(),
            paper_ref: statement.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            kind: CheckKind::Exact,
            value,
            target,
            residual: None,
            tolerance: None,
            elapsed_ms: 0,
        }
    }

    /// Passes iff the residual is finite and ≤ tolerance.
    pub fn numeric(
        name: impl Into<String>,
        statement: &str,
        value: Value,
        target: Value,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let ok = residual.is_finite() && residual <= tolerance;
        CheckRecord {
            name: name.into(),
            paper_ref: statement.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            kind: CheckKind::Numeric,
            value,
            target,
            residual: finite(residual),
            tolerance: Some(tolerance),
            elapsed_ms: 0,
        }
    }

    /// A refusal (hypothesis not met) or a module error.
    pub fn from_error(name: impl Into<String>, statement: &str, kind: CheckKind, e: &Error) -> Self {
        CheckRecord {
            name: name.into(),
            paper_ref: statement.to_string(),
            status: match e {
                Error::Refused(_) => Status::Refused,
                _ => Status::Error,
            },
            kind,
            value: Value::String(e.to_string()),
            target: Value::Null,
            residual: None,
            tolerance: None,
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Run `f`, stamping the elapsed time on every record it returns.
pub fn timed(f: impl FnOnce() -> Vec<CheckRecord>) -> Vec<CheckRecord> {
    let t = Instant::now();
    let mut recs = f();
    let ms = t.elapsed().as_millis() as u64;
    for r in &mut recs {
        r.elapsed_ms = ms;
    }
    recs
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsRecord {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "A")]
    pub a: u32,
    pub lambda1: String,
    pub lambda2: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: ParamsRecord,
    pub checks: Vec<CheckRecord>,
    pub version: String,
    pub seed: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(CheckRecord::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Zero every elapsed_ms, the only run-dependent field.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.elapsed_ms = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}
