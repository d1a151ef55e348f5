use std::fmt::Write as _;

use serde::Serialize;

use super::config::RunConfig;
use crate::theorems::{Instance, TheoremVerdict, Witness};

pub const SCHEMA_VERSION: &str = "zp-sumsets/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub instance: Instance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl From<TheoremVerdict> for FailureRecord {
    fn from(v: TheoremVerdict) -> Self {
        Self {
            instance: v.instance,
            witness: v.witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSummary {
    pub index: usize,
    /// First and last bitmask of `A` (exhaustive) or sample index (sample).
    pub first: u64,
    pub last: u64,
    pub instances: u64,
    pub checksum: String,
}

/// Aggregate result of one run. Serializes to the JSON report document.
///
/// Wall-clock time is kept out of the document so that identical
/// configurations produce identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub config: RunConfig,
    pub instances_tested: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_count: Option<u64>,
    pub hypothesis_met_count: u64,
    pub conclusion_failure_count: u64,
    pub conclusion_failures: Vec<FailureRecord>,
    pub partitions: Vec<PartitionSummary>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(config: RunConfig) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            config,
            instances_tested: 0,
            closed_form_count: None,
            hypothesis_met_count: 0,
            conclusion_failure_count: 0,
            conclusion_failures: Vec::new(),
            partitions: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.conclusion_failure_count == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per retained counterexample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem,p,a,b,param,witness\n");
        for f in &self.conclusion_failures {
            let (b, param) = match &f.instance {
                Instance::Set(_) => (String::new(), String::new()),
                Instance::Pair(_, b) => (b.to_string(), String::new()),
                Instance::SetAndDifference(_, d) => (String::new(), d.to_string()),
                Instance::Site(_, b, e) => (b.to_string(), e.to_string()),
            };
            let witness = f
                .witness
                .as_ref()
                .map(|w| serde_json::to_string(w).expect("witness serializes"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},\"{}\",\"{}\",{},\"{}\"",
                self.config.theorem,
                self.config.p,
                f.instance.first(),
                b,
                param,
                witness.replace('"', "\"\"")
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "{} p={}: {} instances, {} met hypotheses, {} counterexamples",
            self.config.theorem,
            self.config.p,
            self.instances_tested,
            self.hypothesis_met_count,
            self.conclusion_failure_count
        )
    }
}
