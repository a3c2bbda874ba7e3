use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scenario::{Case, ScenarioSpec, Surrogate, MIN_REPLICATIONS};
use crate::error::{Error, Result};
use crate::metrics::{ermse, nmae, sigma_vs};
use crate::simulators::{
    allocate_replications_with_floor, eggbox, eggbox_mean, eggbox_variance, equispaced, ishigami, ishigami_mean,
    ishigami_variance, lhs_design, lhs_design_with_rng, mm1_simulate, mm1_true, synthetic_known_noise,
};
use crate::sk::{fit_full_pce_sk, fit_lar_pce_sk, fit_ordinary_sk, ExperimentalDesign, SkModel};

/// Mixed into the master seed for the validation-set design.
const VALIDATION_SALT: u64 = 0x5eed_0f_7a11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Ok,
    Failed,
}

/// One (scenario, surrogate, macro-replication) outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub scenario: String,
    pub surrogate: Surrogate,
    pub rep: usize,
    /// Seed of the genetic algorithm for this replication.
    pub seed: u64,
    pub status: RunStatus,
    pub ermse: Option<f64>,
    pub nmae: Option<f64>,
    /// Number of trend functions.
    pub basis_size: Option<usize>,
    pub sigma_vs: Option<f64>,
    pub error: Option<String>,
    /// Fit plus validation time in seconds.
    #[serde(skip)]
    pub wall_time: f64,
}

/// Dense validation points with the noise-free response.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationSet {
    pub points: Vec<Vec<f64>>,
    pub truth: Vec<f64>,
    /// Per-replication noise variance at each point.
    pub noise_variance: Vec<f64>,
}

fn true_mean(spec: &ScenarioSpec, x: &[f64]) -> Result<f64> {
    Ok(match spec.case {
        Case::Mm1Known | Case::Mm1Budget => mm1_true(x[0], spec.run_length.unwrap_or(1.0))?.0,
        Case::EggBox => eggbox_mean(x),
        Case::Ishigami => ishigami_mean(x),
    })
}

fn noise_variance(spec: &ScenarioSpec, x: &[f64]) -> Result<f64> {
    Ok(match spec.case {
        Case::Mm1Known | Case::Mm1Budget => mm1_true(x[0], spec.run_length.unwrap_or(1.0))?.1,
        Case::EggBox => eggbox_variance(x),
        Case::Ishigami => ishigami_variance(x, spec.noise_reading),
    })
}

/// One simulator replication at `x`.
fn draw(spec: &ScenarioSpec, x: &[f64], rng: &mut ChaCha8Rng) -> Result<f64> {
    match spec.case {
        Case::Mm1Known | Case::Mm1Budget => {
            let t = spec.run_length.unwrap_or(1.0);
            if spec.use_des {
                mm1_simulate(x[0], t, rng)
            } else {
                synthetic_known_noise(x[0], t, rng)
            }
        }
        Case::EggBox => eggbox(x, rng),
        Case::Ishigami => ishigami(x, spec.noise_reading, rng),
    }
}

/// The validation set shared by every replication of a scenario: an
/// equispaced grid in one dimension, a Latin hypercube otherwise.
pub fn validation_set(spec: &ScenarioSpec) -> Result<ValidationSet> {
    let domain = spec.case.domain();
    let points = if domain.len() == 1 {
        equispaced(spec.validation_size, domain[0].0, domain[0].1)
    } else {
        lhs_design(spec.validation_size, &domain, spec.seed ^ VALIDATION_SALT)
    };
    let truth = points.iter().map(|x| true_mean(spec, x)).collect::<Result<_>>()?;
    let noise_variance = points.iter().map(|x| noise_variance(spec, x)).collect::<Result<_>>()?;
    Ok(ValidationSet {
        points,
        truth,
        noise_variance,
    })
}

/// Random stream of replication `rep`: the master seed selects the
/// generator and the replication index selects its stream.
pub fn rep_rng(seed: u64, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep as u64);
    rng
}

/// Draws the experimental design of one replication.
pub fn simulate_design(spec: &ScenarioSpec, rng: &mut ChaCha8Rng) -> Result<ExperimentalDesign> {
    let points = match spec.case {
        Case::Mm1Known | Case::Mm1Budget => {
            let d = spec.case.domain()[0];
            equispaced(spec.k, d.0, d.1)
        }
        _ => lhs_design_with_rng(spec.k, &spec.case.domain(), rng),
    };
    let variances = points.iter().map(|x| noise_variance(spec, x)).collect::<Result<Vec<_>>>()?;
    if spec.case == Case::Mm1Known {
        let means = points.iter().map(|x| draw(spec, x, rng)).collect::<Result<Vec<_>>>()?;
        let k = points.len();
        return ExperimentalDesign::with_known_variances(points, means, variances, vec![1; k]);
    }
    let budget = spec
        .budget
        .ok_or_else(|| Error::Config(format!("scenario `{}` has no budget", spec.id)))?;
    let n = allocate_replications_with_floor(&variances, budget, MIN_REPLICATIONS)?;
    let mut outputs = Vec::with_capacity(points.len());
    for (x, &ni) in points.iter().zip(&n) {
        outputs.push((0..ni).map(|_| draw(spec, x, rng)).collect::<Result<Vec<_>>>()?);
    }
    ExperimentalDesign::from_replications(points, outputs)
}

/// `σ_VS` of one replication: analytic in the known-variance case, from one
/// simulated replication per validation point otherwise.
fn replication_sigma_vs(spec: &ScenarioSpec, vs: &ValidationSet, rng: &mut ChaCha8Rng) -> Result<f64> {
    if spec.case == Case::Mm1Known {
        let mean_var = vs.noise_variance.iter().sum::<f64>() / vs.noise_variance.len() as f64;
        return Ok(mean_var.sqrt());
    }
    let draws = vs.points.iter().map(|x| draw(spec, x, rng)).collect::<Result<Vec<_>>>()?;
    sigma_vs(&draws, &vs.truth)
}

fn fit(spec: &ScenarioSpec, surrogate: Surrogate, ed: ExperimentalDesign, seed: u64) -> Result<SkModel> {
    let ga = spec.ga.clone().with_seed(seed);
    let domain = spec.case.domain();
    match surrogate {
        Surrogate::OrdinarySk => fit_ordinary_sk(ed, &ga),
        Surrogate::FullPceSk => {
            let p = spec
                .full_degree
                .ok_or_else(|| Error::Config("full-pce-sk requires full_degree".into()))?;
            fit_full_pce_sk(ed, &domain, p, spec.q_norm, &ga)
        }
        Surrogate::LarPceSk => Ok(fit_lar_pce_sk(ed, &domain, spec.lar_degree, spec.q_norm, &ga)?.model),
    }
}

fn evaluate(model: &SkModel, vs: &ValidationSet, s_vs: f64) -> Result<(f64, f64)> {
    let pred = vs
        .points
        .iter()
        .map(|x| model.predict(x).map(|p| p.mean))
        .collect::<Result<Vec<_>>>()?;
    Ok((ermse(&pred, &vs.truth)?, nmae(&pred, &vs.truth, s_vs)?))
}

/// Runs one macro-replication: every surrogate sees the same design, noise
/// and validation set.
pub fn run_replication(spec: &ScenarioSpec, vs: &ValidationSet, rep: usize) -> Vec<RunResult> {
    let mut rng = rep_rng(spec.seed, rep);
    let seed: u64 = rng.random();
    let data = simulate_design(spec, &mut rng).and_then(|ed| Ok((replication_sigma_vs(spec, vs, &mut rng)?, ed)));
    spec.surrogates
        .iter()
        .map(|&surrogate| {
            let start = Instant::now();
            let row = |status, error: Option<String>| RunResult {
                scenario: spec.id.clone(),
                surrogate,
                rep,
                seed,
                status,
                ermse: None,
                nmae: None,
                basis_size: None,
                sigma_vs: None,
                error,
                wall_time: 0.0,
            };
            let (s_vs, ed) = match &data {
                Ok(d) => d,
                Err(e) => return row(RunStatus::Failed, Some(e.to_string())),
            };
            let outcome = fit(spec, surrogate, ed.clone(), seed).and_then(|m| Ok((m.trend.len(), evaluate(&m, vs, *s_vs)?)));
            let mut r = match outcome {
                Ok((size, (e, n))) => RunResult {
                    ermse: Some(e),
                    nmae: Some(n),
                    basis_size: Some(size),
                    sigma_vs: Some(*s_vs),
                    ..row(RunStatus::Ok, None)
                },
                Err(e) => {
                    log::warn!("{} rep {rep} {}: {e}", spec.id, surrogate.name());
                    row(RunStatus::Failed, Some(e.to_string()))
                }
            };
            r.wall_time = start.elapsed().as_secs_f64();
            r
        })
        .collect()
}

/// Runs every macro-replication of a scenario, using up to `jobs` threads
/// (all available when `None`). Rows are ordered by replication, then by
/// surrogate, whatever the thread count.
pub fn run_scenario(spec: &ScenarioSpec, jobs: Option<usize>) -> Result<Vec<RunResult>> {
    spec.validate()?;
    let vs = validation_set(spec)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let per_rep: Vec<Vec<RunResult>> = pool.install(|| {
        (0..spec.macro_replications)
            .into_par_iter()
            .map(|rep| run_replication(spec, &vs, rep))
            .collect()
    });
    Ok(per_rep.into_iter().flatten().collect())
}
