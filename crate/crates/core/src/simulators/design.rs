use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Latin hypercube sample of `k` points in the box `domain`: each axis is cut
/// into `k` equal strata holding exactly one point, jittered uniformly
/// within its stratum.
pub fn lhs_design_with_rng<R: Rng + ?Sized>(k: usize, domain: &[(f64, f64)], rng: &mut R) -> Vec<Vec<f64>> {
    let mut points = vec![vec![0.0; domain.len()]; k];
    for (d, &(lo, hi)) in domain.iter().enumerate() {
        let mut strata: Vec<usize> = (0..k).collect();
        strata.shuffle(rng);
        for (p, s) in points.iter_mut().zip(strata) {
            let u = (s as f64 + rng.random::<f64>()) / k as f64;
            p[d] = lo + (hi - lo) * u;
        }
    }
    points
}

pub fn lhs_design(k: usize, domain: &[(f64, f64)], seed: u64) -> Vec<Vec<f64>> {
    lhs_design_with_rng(k, domain, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `k` equispaced points from `lo` to `hi` inclusive.
pub fn equispaced(k: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    match k {
        0 => Vec::new(),
        1 => vec![vec![0.5 * (lo + hi)]],
        _ => (0..k).map(|i| vec![lo + (hi - lo) * i as f64 / (k - 1) as f64]).collect(),
    }
}

/// Splits a budget of `C` replications in proportion to `√V_i` with at least
/// one replication per point. See [`allocate_replications_with_floor`].
pub fn allocate_replications(variances: &[f64], budget: usize) -> Result<Vec<usize>> {
    allocate_replications_with_floor(variances, budget, 1)
}

/// Splits `budget` in proportion to `√V_i`, giving every point at least
/// `floor` replications. Points whose share falls below the floor are fixed
/// at it and the rest is re-split among the others; the real-valued targets
/// are then rounded by largest remainder, ties going to the lower index.
pub fn allocate_replications_with_floor(variances: &[f64], budget: usize, floor: usize) -> Result<Vec<usize>> {
    let k = variances.len();
    if k == 0 {
        return Err(Error::InvalidArgument("no design points to allocate to".into()));
    }
    if let Some(v) = variances.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument(format!("invalid variance {v}")));
    }
    if budget < k * floor {
        return Err(Error::BudgetTooSmall {
            budget,
            points: k,
            per_point: floor,
        });
    }
    let sd: Vec<f64> = variances.iter().map(|v| v.sqrt()).collect();
    let mut fixed = vec![false; k];
    let mut targets = vec![0.0; k];
    loop {
        let free_budget = (budget - floor * fixed.iter().filter(|f| **f).count()) as f64;
        let free: Vec<usize> = (0..k).filter(|&i| !fixed[i]).collect();
        let total: f64 = free.iter().map(|&i| sd[i]).sum();
        for &i in &free {
            targets[i] = if total > 0.0 {
                sd[i] / total * free_budget
            } else {
                free_budget / free.len() as f64
            };
        }
        let below: Vec<usize> = free.iter().copied().filter(|&i| targets[i] < floor as f64).collect();
        if below.is_empty() {
            break;
        }
        for i in below {
            fixed[i] = true;
            targets[i] = floor as f64;
        }
    }
    let mut n: Vec<usize> = targets.iter().map(|t| t.floor() as usize).collect();
    let assigned: usize = n.iter().sum();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (targets[a] - targets[a].floor(), targets[b] - targets[b].floor());
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle().take(budget.saturating_sub(assigned)) {
        n[i] += 1;
    }
    Ok(n)
}
