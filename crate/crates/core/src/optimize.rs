//! Real-coded genetic algorithm for box-constrained maximization, with an
//! optional coordinate-wise golden-section polish of the best individual.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Blend-crossover extension: children are drawn from the parents' interval
/// widened by this fraction on each side.
const BLEND_ALPHA: f64 = 0.5;

/// Re-draws of an all-infeasible initial population before giving up.
const RESEEDS: usize = 10;

/// Golden-section iterations per coordinate step of the polish.
const GOLDEN_ITERS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Gaussian mutation standard deviation as a fraction of the box width.
    pub mutation_scale: f64,
    pub elitism: usize,
    /// Generations without improvement of the best value before stopping.
    pub stall_generations: usize,
    /// Coordinate-wise golden-section steps after the GA; 0 disables.
    pub polish_steps: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 40,
            generations: 100,
            tournament_size: 3,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            mutation_scale: 0.1,
            elitism: 2,
            stall_generations: 20,
            polish_steps: 50,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self, bounds: &[(f64, f64)]) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.to_string()));
        if self.population < 4 {
            return bad("population must be at least 4");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) || !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad("crossover and mutation rates must lie in [0, 1]");
        }
        if self.elitism >= self.population {
            return bad("elitism must be smaller than the population");
        }
        if self.tournament_size == 0 {
            return bad("tournament size must be positive");
        }
        if bounds.is_empty() {
            return bad("at least one gene is required");
        }
        for &(lo, hi) in bounds {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidArgument(format!("invalid gene interval [{lo}, {hi}]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaResult {
    pub best: Vec<f64>,
    pub value: f64,
    /// Best value found so far after each generation (index 0 is the
    /// initial population). The polish is not part of the history.
    pub history: Vec<f64>,
    pub evaluations: usize,
}

fn fitness(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::NEG_INFINITY
    }
}

fn evaluate<F>(objective: &F, genes: &[Vec<f64>]) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    genes.par_iter().map(|g| fitness(objective(g))).collect()
}

fn tournament(rng: &mut ChaCha8Rng, fit: &[f64], size: usize) -> usize {
    let mut best = rng.random_range(0..fit.len());
    for _ in 1..size {
        let c = rng.random_range(0..fit.len());
        if fit[c] > fit[best] || (fit[c] == fit[best] && c < best) {
            best = c;
        }
    }
    best
}

/// Maximizes `objective` over the box `bounds`. Non-finite objective values
/// are infeasible and rank below every feasible point.
///
/// Deterministic for a fixed seed: fitness values may be computed in
/// parallel, but all random draws happen on the calling thread.
pub fn ga_maximize<F>(objective: F, bounds: &[(f64, f64)], config: &GaConfig) -> Result<GaResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate(bounds)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let dim = bounds.len();
    let n = config.population;
    let mut evaluations = 0;

    let mut pop: Vec<Vec<f64>> = Vec::new();
    let mut fit: Vec<f64> = Vec::new();
    for _ in 0..=RESEEDS {
        pop = (0..n)
            .map(|_| bounds.iter().map(|&(lo, hi)| rng.random_range(lo..=hi)).collect())
            .collect();
        fit = evaluate(&objective, &pop);
        evaluations += n;
        if fit.iter().any(|f| f.is_finite()) {
            break;
        }
    }
    if fit.iter().all(|f| !f.is_finite()) {
        return Err(Error::OptimizerFailed(format!(
            "no feasible point in {} initial populations",
            RESEEDS + 1
        )));
    }

    let best_of = |fit: &[f64]| {
        let mut b = 0;
        for i in 1..fit.len() {
            if fit[i] > fit[b] {
                b = i;
            }
        }
        b
    };
    let b = best_of(&fit);
    let mut best = pop[b].clone();
    let mut best_val = fit[b];
    let mut history = vec![best_val];
    let mut stall = 0;

    for _ in 0..config.generations {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| fit[b].total_cmp(&fit[a]).then(a.cmp(&b)));

        let mut next: Vec<Vec<f64>> = order[..config.elitism].iter().map(|&i| pop[i].clone()).collect();
        let mut next_fit: Vec<f64> = order[..config.elitism].iter().map(|&i| fit[i]).collect();
        let mut children = Vec::with_capacity(n - config.elitism);
        while children.len() < n - config.elitism {
            let p1 = &pop[tournament(&mut rng, &fit, config.tournament_size)];
            let p2 = &pop[tournament(&mut rng, &fit, config.tournament_size)];
            let (mut c1, mut c2) = (p1.clone(), p2.clone());
            if rng.random::<f64>() < config.crossover_rate {
                for d in 0..dim {
                    let (lo, hi) = (p1[d].min(p2[d]), p1[d].max(p2[d]));
                    let ext = BLEND_ALPHA * (hi - lo);
                    let (a, b) = (lo - ext, hi + ext);
                    c1[d] = a + (b - a) * rng.random::<f64>();
                    c2[d] = a + (b - a) * rng.random::<f64>();
                }
            }
            for c in [&mut c1, &mut c2] {
                for (d, &(lo, hi)) in bounds.iter().enumerate() {
                    if rng.random::<f64>() < config.mutation_rate {
                        let z: f64 = rng.sample(StandardNormal);
                        c[d] += z * config.mutation_scale * (hi - lo);
                    }
                    c[d] = c[d].clamp(lo, hi);
                }
            }
            children.push(c1);
            if children.len() < n - config.elitism {
                children.push(c2);
            }
        }
        let child_fit = evaluate(&objective, &children);
        evaluations += children.len();
        next.extend(children);
        next_fit.extend(child_fit);
        pop = next;
        fit = next_fit;

        let b = best_of(&fit);
        if fit[b] > best_val {
            best_val = fit[b];
            best = pop[b].clone();
            stall = 0;
        } else {
            stall += 1;
        }
        history.push(best_val);
        if config.stall_generations > 0 && stall >= config.stall_generations {
            break;
        }
    }

    if config.polish_steps > 0 {
        let (x, v, evals) = polish(&objective, bounds, best, best_val, config.polish_steps);
        best = x;
        best_val = v;
        evaluations += evals;
    }

    Ok(GaResult {
        best,
        value: best_val,
        history,
        evaluations,
    })
}

/// Coordinate-wise golden-section refinement. Each step searches one
/// coordinate over a bracket around the current value; brackets start at a
/// tenth of the box width and halve after every sweep. Moves are accepted
/// only when they improve the value.
fn polish<F>(objective: &F, bounds: &[(f64, f64)], mut x: Vec<f64>, mut val: f64, steps: usize) -> (Vec<f64>, f64, usize)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let dim = bounds.len();
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut evals = 0;
    for step in 0..steps {
        let d = step % dim;
        let sweep = step / dim;
        let (lo_b, hi_b) = bounds[d];
        let half = 0.1 * (hi_b - lo_b) * 0.5f64.powi(sweep as i32);
        let (mut a, mut b) = ((x[d] - half).max(lo_b), (x[d] + half).min(hi_b));
        let mut probe = x.clone();
        let mut eval_at = |t: f64, probe: &mut Vec<f64>| {
            probe[d] = t;
            evals += 1;
            fitness(objective(probe))
        };
        let mut c = b - inv_phi * (b - a);
        let mut e = a + inv_phi * (b - a);
        let mut fc = eval_at(c, &mut probe);
        let mut fe = eval_at(e, &mut probe);
        for _ in 0..GOLDEN_ITERS {
            if fc >= fe {
                b = e;
                e = c;
                fe = fc;
                c = b - inv_phi * (b - a);
                fc = eval_at(c, &mut probe);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + inv_phi * (b - a);
                fe = eval_at(e, &mut probe);
            }
        }
        let (t, ft) = if fc >= fe { (c, fc) } else { (e, fe) };
        if ft > val {
            x[d] = t;
            val = ft;
        }
    }
    (x, val, evals)
}
