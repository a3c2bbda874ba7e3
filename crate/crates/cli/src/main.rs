use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use usk_core::harness::{
    preset, preset_names, read_results, run_scenario, summarize, too_many_failures, write_all, write_summary, RunConfig,
    RESULTS_FILE, SUMMARY_FILE,
};
use usk_core::Error;

#[derive(Parser)]
#[command(name = "usk", version, about = "Stochastic kriging surrogate benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenarios of a TOML config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Master seed for every scenario.
        #[arg(long)]
        seed: Option<u64>,
        /// Macro-replications per scenario.
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Recompute summary.csv from an existing results.csv.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the built-in scenario presets.
    ListScenarios,
}

const EXIT_PARTIAL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn fail(code: u8, e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(code)
}

fn run(config: PathBuf, seed: Option<u64>, reps: Option<usize>, out: PathBuf, jobs: Option<usize>) -> ExitCode {
    let mut cfg = match RunConfig::from_file(&config) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    for entry in &mut cfg.scenario {
        if seed.is_some() {
            entry.seed = seed;
        }
        if reps.is_some() {
            entry.macro_replications = reps;
        }
    }
    let scenarios = match cfg.scenarios() {
        Ok(s) => s,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let mut results = Vec::new();
    for spec in &scenarios {
        log::info!("{}: {} replications", spec.id, spec.macro_replications);
        match run_scenario(spec, jobs) {
            Ok(r) => results.extend(r),
            Err(e @ Error::Config(_)) => return fail(EXIT_CONFIG, e),
            Err(e) => return fail(EXIT_PARTIAL, e),
        }
    }
    let summary = summarize(&results);
    if let Err(e) = write_all(&out, &scenarios, &results, &summary) {
        return fail(EXIT_PARTIAL, e);
    }
    for row in &summary {
        println!(
            "{:<16} {:<12} ok={:<3} failed={:<3} mean_ermse={} improvement={}",
            row.scenario,
            row.surrogate.name(),
            row.reps_ok,
            row.reps_failed,
            row.mean_ermse.map_or("-".into(), |v| format!("{v:.4}")),
            row.ermse_improvement_pct.map_or("-".into(), |v| format!("{v:.1}%")),
        );
    }
    if too_many_failures(&results) {
        return fail(EXIT_PARTIAL, "more than 10% of replications failed");
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Run {
            config,
            seed,
            reps,
            out,
            jobs,
        } => run(config, seed, reps, out, jobs),
        Command::Summarize { input } => {
            let results = match read_results(&input.join(RESULTS_FILE)) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_CONFIG, e),
            };
            if results.is_empty() {
                return fail(EXIT_CONFIG, "results file is empty");
            }
            match write_summary(&input.join(SUMMARY_FILE), &summarize(&results)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(EXIT_PARTIAL, e),
            }
        }
        Command::ListScenarios => {
            println!("{:<14} {:<10} {:>4} {:>6} {:>6} {:>4} {:>5} {:>4}", "name", "case", "k", "C", "T", "p", "full", "q");
            for name in preset_names() {
                let s = preset(name).expect("preset");
                let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
                println!(
                    "{:<14} {:<10} {:>4} {:>6} {:>6} {:>4} {:>5} {:>4}",
                    name,
                    format!("{:?}", s.case),
                    s.k,
                    opt(s.budget.map(|v| v.to_string())),
                    opt(s.run_length.map(|v| v.to_string())),
                    s.lar_degree,
                    opt(s.full_degree.map(|v| v.to_string())),
                    s.q_norm
                );
            }
            ExitCode::SUCCESS
        }
    }
}
