use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use cocert_core::CertifiedClaim;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Exit codes.
pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Deterministic run facts. Wall time is only present under `--timing`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    pub seed: u64,
    pub jobs: usize,
    pub claim_nodes: usize,
    pub status_counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Runtime {
    pub fn new(claim: &CertifiedClaim, seed: u64, jobs: usize) -> Self {
        let mut status_counts = BTreeMap::new();
        let mut claim_nodes = 0;
        claim.walk(&mut |c| {
            claim_nodes += 1;
            *status_counts.entry(c.status.label().to_string()).or_insert(0) += 1;
        });
        Runtime {
            seed,
            jobs,
            claim_nodes,
            status_counts,
            elapsed_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub claim: CertifiedClaim,
    pub runtime: Runtime,
    pub toolkit_version: String,
    pub registry_version: String,
}

impl Report {
    pub fn exit_code(&self, strict: bool) -> i32 {
        exit_code(&self.claim, strict)
    }
}

/// REFUTED anywhere gives 1; under `strict` anything short of a fully
/// computed tree gives 2.
pub fn exit_code(claim: &CertifiedClaim, strict: bool) -> i32 {
    if claim.any_refuted() {
        EXIT_REFUTED
    } else if strict && !claim.fully_computed() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_VERIFIED
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "command: {}", report.command.join(" "));
            if !report.parameters.is_empty() {
                let p: Vec<String> = report.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "parameters: {}", p.join(", "));
            }
            let _ = writeln!(
                s,
                "toolkit {} / registry {} / seed {} / jobs {}",
                report.toolkit_version, report.registry_version, report.runtime.seed, report.runtime.jobs
            );
            if let Some(ms) = report.runtime.elapsed_ms {
                let _ = writeln!(s, "elapsed: {ms} ms");
            }
            s.push_str(&report.claim.render_text());
            if let Some(g) = report.claim.data.get("group") {
                let _ = writeln!(s, "group: {g}");
            }
            s
        }
    }
}
