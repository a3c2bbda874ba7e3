//! Scenario configuration, macro-replicated runs and result tables.

mod output;
mod run;
mod scenario;
mod summary;

pub use output::{
    read_results, write_all, write_design_csv, write_metadata, write_results, write_summary, write_timings, METADATA_FILE,
    RESULTS_COLUMNS, RESULTS_FILE, SUMMARY_FILE, TIMINGS_FILE,
};
pub use run::{rep_rng, run_replication, run_scenario, simulate_design, validation_set, RunResult, RunStatus, ValidationSet};
pub use scenario::{
    preset, preset_names, Case, RunConfig, ScenarioEntry, ScenarioSpec, Surrogate, DEFAULT_REPS, DEFAULT_SEED,
    MIN_REPLICATIONS,
};
pub use summary::{improvement_pct, mean, median, summarize, SummaryRow};

/// Share of failed rows above which a run counts as a partial failure.
pub const FAILURE_THRESHOLD: f64 = 0.1;

/// Whether more than [`FAILURE_THRESHOLD`] of the rows failed.
pub fn too_many_failures(results: &[RunResult]) -> bool {
    let failed = results.iter().filter(|r| r.status == RunStatus::Failed).count();
    !results.is_empty() && failed as f64 > FAILURE_THRESHOLD * results.len() as f64
}
