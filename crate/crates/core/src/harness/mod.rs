//! Enumeration engine, sampler, extremal search, reports and CLI.

pub mod cli;
mod config;
mod enumerate;
mod report;
pub mod rng;
mod search;

pub use cli::cli_main;
pub use config::{Filters, Mode, RunConfig, DEFAULT_MAX_COUNTEREXAMPLES, EXHAUSTIVE_LIMIT};
pub use enumerate::{
    closed_form_count, draw_instance, enumerate, run, Checker, TheoremChecker, PARTITIONS,
};
pub use report::{FailureRecord, PartitionSummary, VerificationReport, SCHEMA_VERSION};
pub use search::{canonical_pair, canonical_set, extremal_search, SearchCriterion, SearchWitness};
