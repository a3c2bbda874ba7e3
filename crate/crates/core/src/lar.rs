//! Least Angle Regression over a candidate polynomial basis, and sparse
//! basis selection by leave-one-out error of least-squares refits.
//!
//! The constant polynomial cannot be standardized, so it is kept out of the
//! race: the response is centered, and the constant is added back to every
//! refit.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RANK_TOL;
use crate::polychaos::{information_matrix, least_squares_with_loo, MultiIndex, PceBasis, PceModel, LEVERAGE_TOL};

/// Maximum residual correlation (relative to `‖y − ȳ‖`) below which the path
/// stops early.
pub const CORRELATION_FLOOR: f64 = 1e-12;

/// Centered column norms below this fraction of the raw column norm mark a
/// predictor as constant over the design.
const ZERO_VARIANCE_TOL: f64 = 1e-10;

/// A new predictor whose squared distance to the active span (unit-norm
/// columns) falls below this is treated as collinear and dropped.
const COLLINEAR_TOL: f64 = 1e-12;

/// Relative slack used when comparing correlations and step lengths so that
/// ties at machine precision go to the lowest basis position.
const TIE_TOL: f64 = 1e-13;

/// One step of the path: the active set after a predictor joined, and the
/// coefficients (on the standardized predictors) reached when the following
/// predictor ties, or the least-squares solution for the last step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LarStep {
    /// Candidate positions, in order of entry.
    pub active: Vec<usize>,
    pub coefficients: Vec<f64>,
    /// Common absolute correlation of the active set when the step began.
    pub max_correlation: f64,
    /// LOO error of the least-squares refit on `{constant} ∪ active`;
    /// `None` when the refit is degenerate.
    pub loo_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LarPath {
    pub steps: Vec<LarStep>,
    /// Index into `steps` of the LOO-minimizing step.
    pub selected: Option<usize>,
    /// Position of the constant polynomial in the candidate basis.
    pub constant: Option<usize>,
    /// Non-constant candidates that are constant over the design and were
    /// left out of the race.
    pub excluded: Vec<usize>,
    /// Candidates dropped because they were collinear with the active set.
    pub collinear: Vec<usize>,
}

/// Standardized predictors: centered, unit-norm columns of the information
/// matrix restricted to the racing candidates.
struct Standardized {
    x: DMatrix<f64>,
    /// Candidate position of each column of `x`.
    positions: Vec<usize>,
}

fn standardize(psi: &DMatrix<f64>, constant: Option<usize>) -> (Standardized, Vec<usize>) {
    let k = psi.nrows();
    let mut positions = Vec::new();
    let mut excluded = Vec::new();
    let mut cols = Vec::new();
    for j in 0..psi.ncols() {
        if Some(j) == constant {
            continue;
        }
        let col = psi.column(j);
        let mean = col.mean();
        let centered = col.map(|v| v - mean);
        let norm = centered.norm();
        let raw = col.norm();
        if raw == 0.0 || norm <= ZERO_VARIANCE_TOL * raw {
            excluded.push(j);
            continue;
        }
        cols.push(centered / norm);
        positions.push(j);
    }
    let mut x = DMatrix::zeros(k, cols.len());
    for (j, c) in cols.iter().enumerate() {
        x.set_column(j, c);
    }
    (Standardized { x, positions }, excluded)
}

/// Cholesky factor of the active Gram matrix, grown one column at a time.
struct GrowingCholesky {
    rows: Vec<Vec<f64>>,
}

impl GrowingCholesky {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn forward(&self, b: &[f64]) -> Vec<f64> {
        let mut z = vec![0.0; b.len()];
        for i in 0..b.len() {
            let s: f64 = (0..i).map(|j| self.rows[i][j] * z[j]).sum();
            z[i] = (b[i] - s) / self.rows[i][i];
        }
        z
    }

    fn backward(&self, z: &[f64]) -> Vec<f64> {
        let n = z.len();
        let mut w = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.rows[j][i] * w[j]).sum();
            w[i] = (z[i] - s) / self.rows[i][i];
        }
        w
    }

    /// Appends a column with Gram entries `cross` against the active set and
    /// squared norm `diag`. Returns false when the column is collinear.
    fn push(&mut self, cross: &[f64], diag: f64) -> bool {
        let z = self.forward(cross);
        let d2 = diag - z.iter().map(|v| v * v).sum::<f64>();
        if d2 <= COLLINEAR_TOL * diag {
            return false;
        }
        let mut row = z;
        row.push(d2.sqrt());
        self.rows.push(row);
        true
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.backward(&self.forward(b))
    }
}

fn check_inputs(candidates: &PceBasis, points: &[Vec<f64>], y: &[f64]) -> Result<()> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    if points.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: points.len(),
            right: y.len(),
        });
    }
    if y.len() < 2 {
        return Err(Error::InvalidArgument(
            "least angle regression needs at least two design points".into(),
        ));
    }
    Ok(())
}

/// Runs Least Angle Regression on the candidate basis evaluated at `points`
/// (already mapped into the families' domain).
///
/// Stops after `min(P, k − 1)` predictors have entered or once every
/// residual correlation has vanished. Each step is scored by the LOO error of
/// an ordinary least-squares refit on the constant plus the active set.
pub fn lar_path(candidates: &PceBasis, points: &[Vec<f64>], y: &[f64]) -> Result<LarPath> {
    check_inputs(candidates, points, y)?;
    let psi = information_matrix(candidates, points)?;
    let constant = candidates.position_of_constant();
    Ok(run_lar(&psi, constant, y))
}

fn run_lar(psi: &DMatrix<f64>, constant: Option<usize>, y: &[f64]) -> LarPath {
    let k = psi.nrows();
    let (std, excluded) = standardize(psi, constant);
    let x = &std.x;
    let p = x.ncols();

    let yv = DVector::from_column_slice(y);
    let ybar = yv.mean();
    let yc = yv.map(|v| v - ybar);
    let floor = CORRELATION_FLOOR * yc.norm();

    let max_active = p.min(k.saturating_sub(1));
    let mut steps = Vec::new();
    let mut collinear = Vec::new();
    let mut blocked = vec![false; p];
    let mut active: Vec<usize> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut chol = GrowingCholesky::new();
    let mut fit = DVector::zeros(k);

    if p == 0 || max_active == 0 || yc.norm() == 0.0 {
        return finish(psi, constant, &yv, steps, excluded, collinear);
    }

    let mut corr = x.transpose() * &yc;
    // first entrant: largest |correlation|, lowest position on ties
    let mut pending = Some(argmax_abs(&corr, &blocked));

    loop {
        if let Some(j) = pending.take() {
            let cross: Vec<f64> = active.iter().map(|&a| x.column(a).dot(&x.column(j))).collect();
            if chol.push(&cross, x.column(j).norm_squared()) {
                active.push(j);
                beta.push(0.0);
                blocked[j] = true;
            } else {
                blocked[j] = true;
                collinear.push(std.positions[j]);
            }
        }
        if active.is_empty() {
            break;
        }
        let big_c = active.iter().map(|&a| corr[a].abs()).fold(0.0, f64::max);
        if big_c <= floor {
            break;
        }

        let signs: Vec<f64> = active.iter().map(|&a| corr[a].signum()).collect();
        let g_inv_s = chol.solve(&signs);
        let norm_a = 1.0 / signs.iter().zip(&g_inv_s).map(|(s, w)| s * w).sum::<f64>().sqrt();
        let w: Vec<f64> = g_inv_s.iter().map(|v| v * norm_a).collect();
        let mut u = DVector::zeros(k);
        for (&a, &wa) in active.iter().zip(&w) {
            u.axpy(wa, &x.column(a), 1.0);
        }
        let a_vec = x.transpose() * &u;

        let full = big_c / norm_a;
        let mut gamma = full;
        let mut entrant = None;
        if active.len() < max_active {
            for j in 0..p {
                if blocked[j] {
                    continue;
                }
                for cand in [
                    (big_c - corr[j]) / (norm_a - a_vec[j]),
                    (big_c + corr[j]) / (norm_a + a_vec[j]),
                ] {
                    if cand.is_finite() && cand > TIE_TOL * full && cand < gamma * (1.0 - TIE_TOL) {
                        gamma = cand;
                        entrant = Some(j);
                    }
                }
            }
        }

        for (b, wa) in beta.iter_mut().zip(&w) {
            *b += gamma * wa;
        }
        fit.axpy(gamma, &u, 1.0);
        let resid = &yc - &fit;
        corr = x.transpose() * &resid;

        steps.push(LarStep {
            active: active.iter().map(|&a| std.positions[a]).collect(),
            coefficients: beta.clone(),
            max_correlation: big_c,
            loo_error: None,
        });

        match entrant {
            Some(j) if active.len() < max_active => pending = Some(j),
            _ => break,
        }
    }

    finish(psi, constant, &yv, steps, excluded, collinear)
}

fn argmax_abs(corr: &DVector<f64>, blocked: &[bool]) -> usize {
    let mut best = usize::MAX;
    let mut best_val = f64::NEG_INFINITY;
    for (j, c) in corr.iter().enumerate() {
        if blocked[j] {
            continue;
        }
        let v = c.abs();
        if best == usize::MAX || v > best_val * (1.0 + TIE_TOL) + f64::MIN_POSITIVE {
            best = j;
            best_val = v;
        }
    }
    best
}

fn finish(
    psi: &DMatrix<f64>,
    constant: Option<usize>,
    y: &DVector<f64>,
    mut steps: Vec<LarStep>,
    excluded: Vec<usize>,
    collinear: Vec<usize>,
) -> LarPath {
    let loo = nested_loo(psi, constant, steps.last().map_or(&[][..], |s| &s.active), y);
    for (step, e) in steps.iter_mut().zip(loo) {
        step.loo_error = e;
    }
    let selected = steps
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.loo_error.map(|e| (i, e)))
        .fold(None, |best: Option<(usize, f64)>, (i, e)| match best {
            Some((_, b)) if b <= e => best,
            _ => Some((i, e)),
        })
        .map(|(i, _)| i);
    LarPath {
        steps,
        selected,
        constant,
        excluded,
        collinear,
    }
}

/// LOO errors of the least-squares refits on `{constant} ∪ active[..=s]` for
/// every `s`. The active sets are nested, so one orthonormal basis is grown
/// column by column (Gram-Schmidt, two passes) and the residual and
/// leverages are updated in `O(k)` per column.
fn nested_loo(psi: &DMatrix<f64>, constant: Option<usize>, active: &[usize], y: &DVector<f64>) -> Vec<Option<f64>> {
    let k = psi.nrows();
    let mean = y.mean();
    let denom: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let mut out = vec![None; active.len()];
    if denom <= 0.0 {
        return out;
    }
    let mut q: Vec<DVector<f64>> = Vec::with_capacity(active.len() + 1);
    let mut resid = y.clone();
    let mut lev = DVector::zeros(k);
    if let Some(c) = constant {
        if !orthonormal_push(psi.column(c).clone_owned(), &mut q, &mut resid, &mut lev) {
            return out;
        }
    }
    for (s, &j) in active.iter().enumerate() {
        if !orthonormal_push(psi.column(j).clone_owned(), &mut q, &mut resid, &mut lev) {
            break;
        }
        let mut numer = 0.0;
        let mut ok = true;
        for i in 0..k {
            if lev[i] >= 1.0 - LEVERAGE_TOL {
                ok = false;
                break;
            }
            numer += (resid[i] / (1.0 - lev[i])).powi(2);
        }
        if !ok {
            break;
        }
        out[s] = Some(numer / denom);
    }
    out
}

/// Orthonormalizes `v` against `q`, appends it, and projects it out of the
/// residual. False when `v` lies in the span of `q`.
fn orthonormal_push(mut v: DVector<f64>, q: &mut Vec<DVector<f64>>, resid: &mut DVector<f64>, lev: &mut DVector<f64>) -> bool {
    let norm = v.norm();
    for _ in 0..2 {
        for b in q.iter() {
            let c = b.dot(&v);
            v.axpy(-c, b, 1.0);
        }
    }
    let rem = v.norm();
    if norm == 0.0 || rem <= RANK_TOL * norm {
        return false;
    }
    v /= rem;
    let c = v.dot(resid);
    resid.axpy(-c, &v, 1.0);
    lev.zip_apply(&v, |h, e| *h += e * e);
    q.push(v);
    true
}

fn refit_columns(constant: Option<usize>, active: &[usize]) -> Vec<usize> {
    let mut cols: Vec<usize> = constant.into_iter().chain(active.iter().copied()).collect();
    cols.sort_unstable();
    cols
}

fn refit_loo(psi: &DMatrix<f64>, constant: Option<usize>, active: &[usize], y: &DVector<f64>) -> Option<f64> {
    let cols = refit_columns(constant, active);
    let sub = psi.select_columns(&cols);
    match least_squares_with_loo(&sub, y) {
        Ok((_, _, Ok(loo))) => Some(loo),
        _ => None,
    }
}

/// Outcome of sparse basis selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseSelection {
    pub basis: PceBasis,
    pub model: PceModel,
    pub path: LarPath,
}

/// Selects the sparse trend basis: runs the LAR path, refits every step by
/// least squares on `{constant} ∪ active`, and keeps the refit with the
/// smallest LOO error. The constant-only model competes as well.
///
/// Points must already be in the families' domain.
pub fn select_sparse_basis(
    candidates: &PceBasis,
    points: &[Vec<f64>],
    y: &[f64],
) -> Result<(PceBasis, PceModel)> {
    let sel = select_sparse_basis_with_path(candidates, points, y)?;
    Ok((sel.basis, sel.model))
}

/// As [`select_sparse_basis`], keeping the path for inspection.
pub fn select_sparse_basis_with_path(
    candidates: &PceBasis,
    points: &[Vec<f64>],
    y: &[f64],
) -> Result<SparseSelection> {
    check_inputs(candidates, points, y)?;
    let candidates = with_constant(candidates);
    let psi = information_matrix(&candidates, points)?;
    let constant = candidates.position_of_constant();
    let path = run_lar(&psi, constant, y);
    let yv = DVector::from_column_slice(y);

    let baseline = refit_loo(&psi, constant, &[], &yv);
    let mut choice: Option<(Vec<usize>, f64)> = baseline.map(|e| (Vec::new(), e));
    for step in &path.steps {
        if let Some(e) = step.loo_error {
            if choice.as_ref().is_none_or(|(_, best)| e < *best) {
                choice = Some((step.active.clone(), e));
            }
        }
    }
    let active = match choice {
        Some((active, _)) => active,
        // zero-variance response: only the constant can be calibrated
        None if yv.iter().all(|v| *v == yv[0]) => Vec::new(),
        None => return Err(Error::SelectionFailed),
    };
    let cols = refit_columns(constant, &active);
    let basis = candidates.subset(&cols);
    let model = crate::polychaos::fit_ols(&basis, points, y)?;
    Ok(SparseSelection { basis, model, path })
}

fn with_constant(candidates: &PceBasis) -> PceBasis {
    if candidates.position_of_constant().is_some() {
        return candidates.clone();
    }
    let mut out = candidates.clone();
    out.indices.insert(0, MultiIndex::zero(candidates.dim()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polychaos::{enumerate_basis, PolynomialFamily};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn points(rng: &mut ChaCha8Rng, k: usize, m: usize) -> Vec<Vec<f64>> {
        (0..k)
            .map(|_| (0..m).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect()
    }

    /// Absolute correlations of the standardized racing predictors with the
    /// residual left by a step's coefficients.
    fn active_correlations(psi: &DMatrix<f64>, constant: Option<usize>, y: &[f64], step: &LarStep) -> Vec<f64> {
        let (std, _) = standardize(psi, constant);
        let yv = DVector::from_column_slice(y);
        let yc = yv.map(|v| v - yv.mean());
        let mut fit = DVector::zeros(y.len());
        for (pos, b) in step.active.iter().zip(&step.coefficients) {
            let col = std.positions.iter().position(|p| p == pos).unwrap();
            fit.axpy(*b, &std.x.column(col), 1.0);
        }
        let r = yc - fit;
        step.active
            .iter()
            .map(|pos| {
                let col = std.positions.iter().position(|p| p == pos).unwrap();
                std.x.column(col).dot(&r).abs()
            })
            .collect()
    }

    #[test]
    fn first_entrant_is_most_correlated() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let basis = enumerate_basis(2, 4, 1.0).unwrap();
        let pts = points(&mut rng, 40, 2);
        let y: Vec<f64> = pts.iter().map(|p| p[0] * p[1] + (3.0 * p[1]).cos()).collect();
        let psi = information_matrix(&basis, &pts).unwrap();
        let (std, _) = standardize(&psi, Some(0));
        let yv = DVector::from_vec(y.clone());
        let yc = yv.map(|v| v - yv.mean());
        let scan = std.x.transpose() * yc;
        let best = (0..scan.len())
            .max_by(|&a, &b| scan[a].abs().partial_cmp(&scan[b].abs()).unwrap())
            .unwrap();
        let path = lar_path(&basis, &pts, &y).unwrap();
        assert_eq!(path.steps[0].active[0], std.positions[best]);
    }

    #[test]
    fn proportional_response_selected_first_with_exact_refit() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let basis = enumerate_basis(2, 3, 1.0).unwrap();
        let pts = points(&mut rng, 30, 2);
        let target = 7; // some non-constant index
        let psi = information_matrix(&basis, &pts).unwrap();
        let y: Vec<f64> = psi.column(target).iter().map(|v| 2.5 * v + 1.0).collect();
        let path = lar_path(&basis, &pts, &y).unwrap();
        assert_eq!(path.steps[0].active, vec![target]);
        assert!(path.steps[0].loo_error.unwrap() < 1e-20);
        let (sel, model) = select_sparse_basis(&basis, &pts, &y).unwrap();
        assert_eq!(sel.indices, vec![basis.indices[0].clone(), basis.indices[target].clone()]);
        let rn: f64 = model.residuals.iter().map(|r| r.abs()).fold(0.0, f64::max);
        assert!(rn < 1e-10);
    }

    #[test]
    fn equiangular_and_nested_on_synthetic_instance() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let basis = enumerate_basis(1, 8, 1.0).unwrap(); // 9 columns, 8 racing
        let pts = points(&mut rng, 20, 1);
        let y: Vec<f64> = pts
            .iter()
            .map(|p| (4.0 * p[0]).sin() + 0.05 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let path = lar_path(&basis, &pts, &y).unwrap();
        let psi = information_matrix(&basis, &pts).unwrap();
        assert_eq!(path.steps.len(), 8);
        for (i, step) in path.steps.iter().enumerate() {
            assert_eq!(step.active.len(), i + 1);
            if i > 0 {
                assert_eq!(&step.active[..i], &path.steps[i - 1].active[..]);
            }
            let c = active_correlations(&psi, Some(0), &y, step);
            let spread = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - c.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(spread <= 1e-8, "step {i}: spread {spread}");
        }
    }

    #[test]
    fn stops_at_k_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let basis = enumerate_basis(2, 6, 1.0).unwrap(); // 28 candidates
        let pts = points(&mut rng, 8, 2);
        let y: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
        let path = lar_path(&basis, &pts, &y).unwrap();
        assert!(path.steps.len() <= 7);
        // the last step interpolates: constant + 7 columns on 8 points
        if path.steps.len() == 7 {
            assert_eq!(path.steps[6].loo_error, None);
        }
    }

    #[test]
    fn incremental_loo_matches_full_refits() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let basis = enumerate_basis(3, 5, 1.0).unwrap();
        let pts = points(&mut rng, 60, 3);
        let y: Vec<f64> = pts.iter().map(|p| p[0] * p[1] + (2.0 * p[2]).sin() + 0.05 * rng.random::<f64>()).collect();
        let path = lar_path(&basis, &pts, &y).unwrap();
        let psi = information_matrix(&basis, &pts).unwrap();
        let yv = DVector::from_column_slice(&y);
        assert!(path.steps.len() > 20);
        for step in &path.steps {
            let full = refit_loo(&psi, path.constant, &step.active, &yv);
            match (step.loo_error, full) {
                (Some(a), Some(b)) => assert!((a - b).abs() <= 1e-9 * b.max(1e-12), "{a} vs {b}"),
                (a, b) => assert_eq!(a.is_some(), b.is_some()),
            }
        }
    }

    #[test]
    fn sparse_truth_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let basis = enumerate_basis(2, 5, 1.0).unwrap(); // 21 candidates
        let pts = points(&mut rng, 60, 2);
        let psi = information_matrix(&basis, &pts).unwrap();
        let truth = [(0usize, 1.0), (2, 2.0), (8, -1.5), (14, 0.8)];
        let y: Vec<f64> = (0..60)
            .map(|i| {
                truth.iter().map(|&(j, c)| c * psi[(i, j)]).sum::<f64>()
                    + 1e-4 * rng.sample::<f64, _>(StandardNormal)
            })
            .collect();
        let (sel, model) = select_sparse_basis(&basis, &pts, &y).unwrap();
        for &(j, _) in &truth {
            assert!(sel.indices.contains(&basis.indices[j]), "missing {}", basis.indices[j]);
        }
        assert!(model.loo_error.unwrap() < 1e-6);
    }

    #[test]
    fn constant_response_selects_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let basis = enumerate_basis(2, 3, 1.0).unwrap();
        let pts = points(&mut rng, 15, 2);
        let y = vec![3.0; 15];
        let (sel, model) = select_sparse_basis(&basis, &pts, &y).unwrap();
        assert_eq!(sel.len(), 1);
        assert!(sel.indices[0].is_zero());
        assert!((model.coefficients[0] - 3.0).abs() < 1e-12);
        assert!(lar_path(&basis, &pts, &y).unwrap().steps.is_empty());
    }

    #[test]
    fn constant_added_when_missing() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let full = enumerate_basis(1, 4, 1.0).unwrap();
        let no_const = full.subset(&[1, 2, 3, 4]);
        let pts = points(&mut rng, 20, 1);
        let y: Vec<f64> = pts.iter().map(|p| 5.0 + p[0]).collect();
        let (sel, _) = select_sparse_basis(&no_const, &pts, &y).unwrap();
        assert!(sel.indices[0].is_zero());
    }

    #[test]
    fn zero_variance_columns_reported() {
        let basis = enumerate_basis(2, 2, 1.0).unwrap();
        let pts: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64 / 6.0 - 1.0, 0.25]).collect();
        let y: Vec<f64> = pts.iter().map(|p| p[0] * p[0]).collect();
        let path = lar_path(&basis, &pts, &y).unwrap();
        // (0,1) and (0,2) depend on the frozen second input only
        assert_eq!(path.excluded, vec![1, 3]);
        assert_eq!(path.constant, Some(0));
    }

    #[test]
    fn rejects_bad_inputs() {
        let basis = PceBasis {
            families: vec![PolynomialFamily::LegendreUniform],
            indices: vec![],
            max_degree: 0,
            q_norm: 1.0,
        };
        assert_eq!(lar_path(&basis, &[vec![0.0]], &[1.0]), Err(Error::EmptyCandidates));
        let basis = enumerate_basis(1, 2, 1.0).unwrap();
        assert!(lar_path(&basis, &[vec![0.0]], &[1.0]).is_err());
        assert!(lar_path(&basis, &[vec![0.0], vec![0.5]], &[1.0]).is_err());
    }
}
