//! Structured verification reports. A check passes only when every asserted
//! coefficient residual is exactly zero (or an expected error class matched).
//! Field order is fixed by declaration, so serialized reports diff cleanly;
//! timings are the only nondeterministic fields.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub base_point: String,
    pub status: CheckStatus,
    /// Worst residual coefficient as an exact rational string; "0" is literal.
    pub residual_summary: String,
    pub detail: String,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EngineMeta {
    pub version: String,
    pub jet_order: u32,
    pub nu_order: i64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub engine: EngineMeta,
    pub records: Vec<CheckRecord>,
    pub overall: CheckStatus,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable table, one line per record.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "engine v{}  J={}  R={}  seed={}\n",
            self.engine.version, self.engine.jet_order, self.engine.nu_order, self.engine.seed
        ));
        for r in &self.records {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            out.push_str(&format!(
                "{status:<5} {:<18} @ {:<14} residual={} {}\n",
                r.name, r.base_point, r.residual_summary, r.detail
            ));
        }
        out.push_str(&format!(
            "overall: {}\n",
            match self.overall {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            }
        ));
        out
    }

    /// The report body with timings stripped, for determinism comparisons.
    pub fn body_without_timings(&self) -> String {
        let mut clone = self.clone();
        for r in &mut clone.records {
            r.timing_ms = 0.0;
        }
        clone.to_json()
    }

    pub fn compute_overall(records: &[CheckRecord]) -> CheckStatus {
        if records.iter().any(|r| r.status == CheckStatus::Fail) {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        }
    }
}
