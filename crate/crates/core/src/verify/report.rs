use serde::{Deserialize, Serialize};

use super::Expect;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryStatus {
    #[serde(rename = "pass-syntactic")]
    PassSyntactic,
    #[serde(rename = "pass-oracle")]
    PassOracle,
    #[serde(rename = "fail")]
    Fail,
}

impl EntryStatus {
    pub fn is_pass(self) -> bool {
        self != EntryStatus::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EntryStatus::PassSyntactic => "pass-syntactic",
            EntryStatus::PassOracle => "pass-oracle",
            EntryStatus::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub d: usize,
    pub status: EntryStatus,
    pub expect: Expect,
    pub residual_terms: usize,
    pub millis: u64,
    /// Plain rendering of the failing residuals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub version: String,
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status.is_pass())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.status.is_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{:<24} d={} {:<15} terms={:<5} {}ms\n",
                e.id,
                e.d,
                e.status.as_str(),
                e.residual_terms,
                e.millis
            ));
            if let Some(r) = &e.residual {
                out.push_str(&format!("    residual: {r}\n"));
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} entries, {} failed\n", self.entries.len(), failed));
        out
    }
}
