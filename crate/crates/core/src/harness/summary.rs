use serde::{Deserialize, Serialize};

use super::run::{RunResult, RunStatus};
use super::scenario::Surrogate;

/// Aggregate accuracy of one surrogate on one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub surrogate: Surrogate,
    pub reps_ok: usize,
    pub reps_failed: usize,
    pub mean_ermse: Option<f64>,
    pub median_ermse: Option<f64>,
    pub mean_nmae: Option<f64>,
    pub median_nmae: Option<f64>,
    pub median_basis_size: Option<f64>,
    /// `100 (1 − mean / mean of ordinary SK)`.
    pub ermse_improvement_pct: Option<f64>,
    pub nmae_improvement_pct: Option<f64>,
    pub median_ermse_improvement_pct: Option<f64>,
    /// Fraction of replications, among those where both succeeded, in which
    /// this surrogate's ERMSE is below ordinary SK's.
    pub win_rate_vs_ordinary: Option<f64>,
}

pub fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

pub fn median(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    Some(if n % 2 == 1 { s[n / 2] } else { 0.5 * (s[n / 2 - 1] + s[n / 2]) })
}

/// Improvement of `value` over `reference` in percent.
pub fn improvement_pct(value: f64, reference: f64) -> f64 {
    100.0 * (1.0 - value / reference)
}

/// Per (scenario, surrogate) statistics, in order of first appearance.
pub fn summarize(results: &[RunResult]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, Surrogate)> = Vec::new();
    for r in results {
        let key = (r.scenario.clone(), r.surrogate);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    let ok = |scenario: &str, surrogate: Surrogate| -> Vec<&RunResult> {
        results
            .iter()
            .filter(|r| r.scenario == scenario && r.surrogate == surrogate && r.status == RunStatus::Ok)
            .collect()
    };
    let mut rows: Vec<SummaryRow> = keys
        .iter()
        .map(|(scenario, surrogate)| {
            let good = ok(scenario, *surrogate);
            let failed = results
                .iter()
                .filter(|r| &r.scenario == scenario && r.surrogate == *surrogate && r.status == RunStatus::Failed)
                .count();
            let e: Vec<f64> = good.iter().filter_map(|r| r.ermse).collect();
            let n: Vec<f64> = good.iter().filter_map(|r| r.nmae).collect();
            let b: Vec<f64> = good.iter().filter_map(|r| r.basis_size.map(|s| s as f64)).collect();
            SummaryRow {
                scenario: scenario.clone(),
                surrogate: *surrogate,
                reps_ok: good.len(),
                reps_failed: failed,
                mean_ermse: mean(&e),
                median_ermse: median(&e),
                mean_nmae: mean(&n),
                median_nmae: median(&n),
                median_basis_size: median(&b),
                ermse_improvement_pct: None,
                nmae_improvement_pct: None,
                median_ermse_improvement_pct: None,
                win_rate_vs_ordinary: None,
            }
        })
        .collect();

    for i in 0..rows.len() {
        let Some(reference) = rows
            .iter()
            .find(|r| r.scenario == rows[i].scenario && r.surrogate == Surrogate::OrdinarySk)
            .cloned()
        else {
            continue;
        };
        let row = &mut rows[i];
        let pct = |v: Option<f64>, r: Option<f64>| match (v, r) {
            (Some(v), Some(r)) if r > 0.0 => Some(improvement_pct(v, r)),
            _ => None,
        };
        row.ermse_improvement_pct = pct(row.mean_ermse, reference.mean_ermse);
        row.nmae_improvement_pct = pct(row.mean_nmae, reference.mean_nmae);
        row.median_ermse_improvement_pct = pct(row.median_ermse, reference.median_ermse);

        let mine = ok(&row.scenario, row.surrogate);
        let base = ok(&row.scenario, Surrogate::OrdinarySk);
        let pairs: Vec<(f64, f64)> = mine
            .iter()
            .filter_map(|m| {
                let b = base.iter().find(|b| b.rep == m.rep)?;
                Some((m.ermse?, b.ermse?))
            })
            .collect();
        if !pairs.is_empty() {
            let wins = pairs.iter().filter(|(m, b)| m < b).count();
            row.win_rate_vs_ordinary = Some(wins as f64 / pairs.len() as f64);
        }
    }
    rows
}
