use std::fs;
use std::path::Path;

use serde::Serialize;

use super::run::RunResult;
use super::scenario::ScenarioSpec;
use super::summary::SummaryRow;
use crate::error::Result;
use crate::sk::ExperimentalDesign;

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const TIMINGS_FILE: &str = "timings.csv";
pub const METADATA_FILE: &str = "metadata.json";

/// Column order of `results.csv`.
pub const RESULTS_COLUMNS: [&str; 10] =
    ["scenario", "surrogate", "rep", "seed", "status", "ermse", "nmae", "basis_size", "sigma_vs", "error"];

#[derive(Serialize)]
struct Metadata<'a> {
    package: &'static str,
    version: &'static str,
    master_seeds: Vec<(&'a str, u64)>,
    stream_rule: &'static str,
    sigma_vs_method: &'static str,
    validation_set: &'static str,
    results_columns: [&'static str; 10],
    scenarios: &'a [ScenarioSpec],
}

pub fn write_results(path: &Path, results: &[RunResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in results {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_results(path: &Path) -> Result<Vec<RunResult>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| Ok(row?)).collect()
}

pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Wall-clock seconds per row; kept apart so the other files are
/// reproducible byte for byte.
pub fn write_timings(path: &Path, results: &[RunResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["scenario", "surrogate", "rep", "wall_time_s"])?;
    for r in results {
        w.write_record([r.scenario.clone(), r.surrogate.name().into(), r.rep.to_string(), r.wall_time.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_metadata(path: &Path, scenarios: &[ScenarioSpec]) -> Result<()> {
    let meta = Metadata {
        package: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        master_seeds: scenarios.iter().map(|s| (s.id.as_str(), s.seed)).collect(),
        stream_rule: "ChaCha8 seeded with the master seed, stream = macro-replication index; \
                      the first u64 drawn seeds the optimizer",
        sigma_vs_method: "mm1-known: sqrt of the mean analytic variance over the validation set; \
                          otherwise one simulated replication per validation point",
        validation_set: "1-D: equispaced grid; otherwise Latin hypercube seeded with master seed ^ 0x5eed0f7a11",
        results_columns: RESULTS_COLUMNS,
        scenarios,
    };
    fs::write(path, serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(())
}

/// Writes results, summary, timings and metadata into `dir`.
pub fn write_all(dir: &Path, scenarios: &[ScenarioSpec], results: &[RunResult], summary: &[SummaryRow]) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_results(&dir.join(RESULTS_FILE), results)?;
    write_summary(&dir.join(SUMMARY_FILE), summary)?;
    write_timings(&dir.join(TIMINGS_FILE), results)?;
    write_metadata(&dir.join(METADATA_FILE), scenarios)
}

/// Raw design dump: point coordinates, `n_i`, then the replication outputs
/// (or the sample mean when raw outputs were not kept). Rows are ragged.
pub fn write_design_csv(path: &Path, ed: &ExperimentalDesign) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_path(path)?;
    let mut header: Vec<String> = (1..=ed.dim()).map(|i| format!("x{i}")).collect();
    header.push("n".into());
    header.push("outputs".into());
    w.write_record(&header)?;
    for i in 0..ed.len() {
        let mut rec: Vec<String> = ed.points[i].iter().map(|v| v.to_string()).collect();
        rec.push(ed.replications[i].to_string());
        match &ed.raw_outputs {
            Some(raw) => rec.extend(raw[i].iter().map(|v| v.to_string())),
            None => rec.push(ed.sample_means[i].to_string()),
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
