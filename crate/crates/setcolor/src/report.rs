//! Claim reports and their JSON / text rendering.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Verified,
    Refuted,
    SampledPass,
    /// Ran out of time before deciding.
    Skipped,
    /// The check itself failed to run.
    Error,
}

impl ClaimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::Refuted => "refuted",
            ClaimStatus::SampledPass => "sampled-pass",
            ClaimStatus::Skipped => "skipped",
            ClaimStatus::Error => "error",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, ClaimStatus::Refuted | ClaimStatus::Error)
    }

    pub fn is_pass(self) -> bool {
        matches!(self, ClaimStatus::Verified | ClaimStatus::SampledPass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub status: ClaimStatus,
    pub statistics: Map<String, Value>,
    #[serde(rename = "duration_secs", serialize_with = "secs")]
    pub duration: Duration,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub artifacts: Map<String, Value>,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl ClaimReport {
    pub fn new(claim_id: impl Into<String>, status: ClaimStatus) -> Self {
        ClaimReport {
            claim_id: claim_id.into(),
            status,
            statistics: Map::new(),
            duration: Duration::ZERO,
            artifacts: Map::new(),
        }
    }

    pub fn stat(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.statistics.insert(key.to_string(), value.into());
        self
    }

    pub fn artifact(mut self, key: &str, value: Value) -> Self {
        self.artifacts.insert(key.to_string(), value);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Renders the reports in the given order.
pub fn render(reports: &[ClaimReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let width = reports.iter().map(|r| r.claim_id.len()).max().unwrap_or(5).max(5);
            let mut out = String::new();
            writeln!(out, "{:<width$}  {:<12}  {:>9}  details", "claim", "status", "seconds").unwrap();
            for r in reports {
                let details = r
                    .statistics
                    .iter()
                    .filter(|(_, v)| !v.is_object() && !v.is_array())
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(
                    out,
                    "{:<width$}  {:<12}  {:>9.3}  {details}",
                    r.claim_id,
                    r.status.as_str(),
                    r.duration.as_secs_f64()
                )
                .unwrap();
            }
            out
        }
    }
}

/// Process exit code: 1 when any claim is refuted or errored.
pub fn exit_code(reports: &[ClaimReport]) -> i32 {
    i32::from(reports.iter().any(|r| r.status.is_failure()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_an_empty_array() {
        assert_eq!(render(&[], Format::Json).trim(), "[]");
        assert_eq!(exit_code(&[]), 0);
    }

    #[test]
    fn refuted_claims_fail_the_run() {
        let ok = ClaimReport::new("a", ClaimStatus::Verified);
        let skipped = ClaimReport::new("b", ClaimStatus::Skipped);
        assert_eq!(exit_code(&[ok.clone(), skipped]), 0);
        let bad = ClaimReport::new("c", ClaimStatus::Refuted);
        assert_eq!(exit_code(&[ok, bad]), 1);
    }

    #[test]
    fn json_shape() {
        let r = ClaimReport::new("lemma1.unsat", ClaimStatus::SampledPass).stat("nodes", 3);
        let v: Value = serde_json::from_str(&render(&[r], Format::Json)).unwrap();
        assert_eq!(v[0]["status"], "sampled-pass");
        assert_eq!(v[0]["statistics"]["nodes"], 3);
        assert!(v[0].get("artifacts").is_none());
    }
}
