//! Stochastic kriging: kriging of replication sample means with a
//! heteroscedastic intrinsic noise covariance, under constant, full
//! polynomial chaos, or LAR-selected polynomial chaos trends.

mod design;
mod model;

pub use design::{intrinsic_covariance, ExperimentalDesign};
pub use model::{
    fit_sk, floored_intrinsic_covariance, predict_sk, sk_covariance, sk_log_bounds, sk_log_likelihood, SkModel,
    SkModelRecord, SIGMA2_RANGE, VARIANCE_FLOOR,
};

pub use crate::kriging::{CorrelationParams, Prediction};
pub use crate::trend::{TrendKind, TrendModel};

use crate::error::{Error, Result};
use crate::lar::{select_sparse_basis_with_path, LarPath};
use crate::optimize::GaConfig;
use crate::polychaos::{enumerate_basis, InputScaling, PceBasis};

/// A LAR-PCE stochastic kriging fit together with the selection it used.
#[derive(Debug, Clone)]
pub struct LarPceSk {
    pub model: SkModel,
    pub candidates: usize,
    pub selected: PceBasis,
    pub path: LarPath,
}

fn check_domain(ed: &ExperimentalDesign, domain: &[(f64, f64)]) -> Result<InputScaling> {
    if domain.len() != ed.dim() {
        return Err(Error::DimensionMismatch {
            expected: ed.dim(),
            actual: domain.len(),
        });
    }
    if domain.iter().any(|(lo, hi)| !(lo < hi)) {
        return Err(Error::InvalidArgument(format!("invalid input domain {domain:?}")));
    }
    Ok(InputScaling::to_unit_interval(domain))
}

/// Ordinary stochastic kriging (constant trend).
pub fn fit_ordinary_sk(ed: ExperimentalDesign, config: &GaConfig) -> Result<SkModel> {
    let dim = ed.dim();
    fit_sk(TrendModel::constant(dim), ed, config)
}

/// Stochastic kriging with every Legendre polynomial of the truncation set
/// `‖α‖_q ≤ p` in the trend. Inputs are mapped from `domain` onto `[−1, 1]`.
pub fn fit_full_pce_sk(ed: ExperimentalDesign, domain: &[(f64, f64)], p: u32, q: f64, config: &GaConfig) -> Result<SkModel> {
    let scaling = check_domain(&ed, domain)?;
    let basis = enumerate_basis(ed.dim(), p, q)?;
    fit_sk(TrendModel::full_pce(basis, scaling)?, ed, config)
}

/// The sparse pipeline: enumerate the truncation set, select a sparse basis
/// by LAR on the sample means, then fit stochastic kriging with that trend.
pub fn fit_lar_pce_sk(ed: ExperimentalDesign, domain: &[(f64, f64)], p: u32, q: f64, config: &GaConfig) -> Result<LarPceSk> {
    let scaling = check_domain(&ed, domain)?;
    let candidates = enumerate_basis(ed.dim(), p, q)?;
    let scaled: Vec<Vec<f64>> = ed.points.iter().map(|x| scaling.apply(x)).collect();
    let sel = select_sparse_basis_with_path(&candidates, &scaled, &ed.sample_means)?;
    let trend = TrendModel::lar_pce(sel.basis.clone(), scaling)?;
    let model = fit_sk(trend, ed, config)?;
    Ok(LarPceSk {
        model,
        candidates: candidates.len(),
        selected: sel.basis,
        path: sel.path,
    })
}
