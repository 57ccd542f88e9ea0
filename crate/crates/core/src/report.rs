//! Verification report rows shared by the library checks and the CLI.

use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The check succeeded.
    Pass,
    /// The check ran and failed.
    Fail,
    /// The check was not run.
    Skipped,
}

/// One row of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Stable identifier of the check.
    pub check_id: String,
    /// The prime the check concerns, if any.
    pub p: Option<u32>,
    /// Outcome.
    pub status: Status,
    /// Human-readable details.
    pub details: String,
    /// Largest numeric residual, when the check is numeric.
    pub residual: Option<f64>,
    /// Wall-clock time spent.
    pub runtime_ms: u64,
}

impl VerificationReport {
    /// A row with the given outcome and no residual.
    pub fn new(check_id: impl Into<String>, p: Option<u32>, pass: bool, details: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            p,
            status: if pass { Status::Pass } else { Status::Fail },
            details: details.into(),
            residual: None,
            runtime_ms: 0,
        }
    }

    /// A row for a numeric check passing when `residual < tol`.
    pub fn numeric(check_id: impl Into<String>, p: Option<u32>, residual: f64, tol: f64, details: impl Into<String>) -> Self {
        let mut r = Self::new(check_id, p, residual.is_finite() && residual < tol, details);
        r.residual = Some(residual);
        r
    }

    /// A skipped row.
    pub fn skipped(check_id: impl Into<String>, p: Option<u32>, details: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            p,
            status: Status::Skipped,
            details: details.into(),
            residual: None,
            runtime_ms: 0,
        }
    }

    /// True when the status is `Pass`.
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f`, stamping the elapsed time on every row it returns.
pub fn timed(f: impl FnOnce() -> Vec<VerificationReport>) -> Vec<VerificationReport> {
    let start = Instant::now();
    let mut rows = f();
    let ms = start.elapsed().as_millis() as u64;
    for r in &mut rows {
        r.runtime_ms = ms;
    }
    rows
}

/// Sorts rows by check id, then by prime (stable for equal keys).
pub fn sort_rows(rows: &mut [VerificationReport]) {
    rows.sort_by(|a, b| (&a.check_id, a.p).cmp(&(&b.check_id, b.p)));
}

/// Renders rows as a JSON array with a stable field order.
pub fn to_json(rows: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(rows).expect("report rows serialize")
}

/// Renders rows as aligned text lines.
pub fn to_text(rows: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in rows {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let p = r.p.map(|p| format!("p={p}")).unwrap_or_default();
        let res = r.residual.map(|x| format!(" residual={x:.3e}")).unwrap_or_default();
        out.push_str(&format!("{status} {:<40} {:<5} {}{} ({} ms)\n", r.check_id, p, r.details, res, r.runtime_ms));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_json_is_empty_array() {
        assert_eq!(to_json(&[]), "[]");
    }

    #[test]
    fn rows_round_trip() {
        let rows = vec![
            VerificationReport::new("a", Some(7), true, "ok"),
            VerificationReport::numeric("b", None, 1e-3, 1e-6, "too big"),
            VerificationReport::skipped("c", Some(13), "not requested"),
        ];
        let back: Vec<VerificationReport> = serde_json::from_str(&to_json(&rows)).unwrap();
        assert_eq!(back, rows);
        assert_eq!(back[1].status, Status::Fail);
    }
}
