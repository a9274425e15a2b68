use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use puiseux::{IntPoly, MonAlgPoly};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(id: &str, anchor: &str, status: Status, details: impl Into<String>) -> Self {
        Check { id: id.into(), anchor: anchor.into(), status, details: details.into() }
    }

    /// Pass or fail from a boolean verdict.
    pub fn verdict(id: &str, anchor: &str, ok: bool, details: impl Into<String>) -> Self {
        Self::new(id, anchor, if ok { Status::Pass } else { Status::Fail }, details)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// 0 when no check failed, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Human => {
            let mut out = String::new();
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                let _ = writeln!(out, "[{tag}] {} ({}): {}", c.id, c.anchor, c.details);
            }
            let _ = write!(
                out,
                "{} checks: {} passed, {} failed, {} skipped ({} ms)",
                report.checks.len(),
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::Skip),
                report.elapsed_ms
            );
            out
        }
    }
}

fn exponent_string(e: &BigRational) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// `[[coefficient, exponent], ...]` as decimal strings, ascending exponents.
pub fn int_poly_json(f: &IntPoly) -> Value {
    Value::Array(
        f.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Value::Array(vec![Value::String(c.to_string()), Value::String(i.to_string())]))
            .collect(),
    )
}

pub fn monalg_json(f: &MonAlgPoly) -> Value {
    Value::Array(
        f.terms()
            .map(|(e, c)| Value::Array(vec![Value::String(c.to_string()), Value::String(exponent_string(e))]))
            .collect(),
    )
}

pub fn rational_string(x: &BigRational) -> String {
    if x.is_negative() {
        format!("-{}", exponent_string(&-x))
    } else {
        exponent_string(x)
    }
}
