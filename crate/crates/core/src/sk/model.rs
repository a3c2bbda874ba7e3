use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::design::{intrinsic_covariance, ExperimentalDesign};
use crate::error::{Error, Result};
use crate::kriging::{check_design, coincident_nugget, correlation_matrix, correlation_vector, theta_log_bounds, CorrelationParams, Prediction};
use crate::linalg::{Gls, SpdFactor};
use crate::optimize::{ga_maximize, GaConfig};
use crate::trend::TrendModel;

/// Intrinsic variances below this fraction of the largest one are raised to
/// it so that the covariance stays well conditioned.
pub const VARIANCE_FLOOR: f64 = 1e-12;

/// Search range for `σ²` relative to the sample variance of the means.
pub const SIGMA2_RANGE: (f64, f64) = (1e-6, 1e2);

/// `Σ_ε` with tiny entries floored at `VARIANCE_FLOOR · max Σ_ε`.
pub fn floored_intrinsic_covariance(ed: &ExperimentalDesign) -> Result<Vec<f64>> {
    let mut cov = intrinsic_covariance(ed)?;
    let max = cov.iter().cloned().fold(0.0, f64::max);
    if max > 0.0 {
        for v in &mut cov {
            *v = v.max(VARIANCE_FLOOR * max);
        }
    }
    Ok(cov)
}

/// `Σ_Z + Σ_ε` with `Σ_Z = σ²R(θ)`.
pub fn sk_covariance(points: &[Vec<f64>], params: &CorrelationParams, sigma_eps: &[f64]) -> DMatrix<f64> {
    let mut c = correlation_matrix(points, &params.theta) * params.sigma2;
    for (i, v) in sigma_eps.iter().enumerate() {
        c[(i, i)] += v;
    }
    c
}

fn log_likelihood_from(factor: &SpdFactor, whitened_resid: &DVector<f64>) -> f64 {
    let k = whitened_resid.len() as f64;
    -0.5 * (k * (2.0 * std::f64::consts::PI).ln() + factor.log_det() + whitened_resid.norm_squared())
}

/// Gaussian log-likelihood of the sample means,
/// `−½[k log 2π + log|Σ_Z + Σ_ε| + (M̄ − Fβ)ᵀ(Σ_Z + Σ_ε)⁻¹(M̄ − Fβ)]`.
pub fn sk_log_likelihood(
    points: &[Vec<f64>],
    trend: &DMatrix<f64>,
    beta: &DVector<f64>,
    params: &CorrelationParams,
    sigma_eps: &[f64],
    sample_means: &DVector<f64>,
) -> Result<f64> {
    let factor = SpdFactor::new(sk_covariance(points, params, sigma_eps))?;
    let resid = factor.whiten_vec(&(sample_means - trend * beta));
    Ok(log_likelihood_from(&factor, &resid))
}

struct Profile {
    factor: SpdFactor,
    gls: Gls,
    beta: DVector<f64>,
    log_likelihood: f64,
}

/// Likelihood with β replaced by its GLS estimate.
fn profile(points: &[Vec<f64>], f: &DMatrix<f64>, params: &CorrelationParams, sigma_eps: &[f64], means: &DVector<f64>) -> Result<Profile> {
    let factor = SpdFactor::new(sk_covariance(points, params, sigma_eps))?;
    let gls = Gls::new(&factor, f)?;
    let mw = factor.whiten_vec(means);
    let beta = gls.beta(&mw);
    let resid = mw - &gls.whitened_trend * &beta;
    let log_likelihood = log_likelihood_from(&factor, &resid);
    Ok(Profile {
        factor,
        gls,
        beta,
        log_likelihood,
    })
}

/// A fitted stochastic kriging model.
#[derive(Debug, Clone)]
pub struct SkModel {
    pub trend: TrendModel,
    pub beta: Vec<f64>,
    pub params: CorrelationParams,
    /// Diagonal of `Σ_ε` after flooring.
    pub sigma_eps: Vec<f64>,
    pub ed: ExperimentalDesign,
    pub log_likelihood: f64,
    factor: SpdFactor,
    gls: Gls,
    /// `(Σ_Z + Σ_ε)⁻¹(M̄ − Fβ̂)`.
    weights: DVector<f64>,
}

/// Serializable form of [`SkModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkModelRecord {
    pub trend: TrendModel,
    pub beta: Vec<f64>,
    pub theta: Vec<f64>,
    pub sigma2: f64,
    pub sigma_eps: Vec<f64>,
    pub ed: ExperimentalDesign,
}

impl SkModel {
    /// Model at fixed `(θ, σ²)` with β̂ from generalized least squares.
    pub fn with_params(trend: TrendModel, ed: ExperimentalDesign, params: CorrelationParams) -> Result<Self> {
        let sigma_eps = floored_intrinsic_covariance(&ed)?;
        Self::build(trend, ed, params, sigma_eps, None)
    }

    fn build(
        trend: TrendModel,
        ed: ExperimentalDesign,
        params: CorrelationParams,
        sigma_eps: Vec<f64>,
        beta: Option<Vec<f64>>,
    ) -> Result<Self> {
        check_design(&ed.points, ed.sample_means.len(), &trend)?;
        if params.theta.len() != trend.dim() {
            return Err(Error::DimensionMismatch {
                expected: trend.dim(),
                actual: params.theta.len(),
            });
        }
        if sigma_eps.len() != ed.len() {
            return Err(Error::LengthMismatch {
                left: ed.len(),
                right: sigma_eps.len(),
            });
        }
        let f = trend.matrix(&ed.points)?;
        let means = DVector::from_column_slice(&ed.sample_means);
        let prof = profile(&ed.points, &f, &params, &sigma_eps, &means)?;
        let beta = match beta {
            Some(b) if b.len() == trend.len() => DVector::from_vec(b),
            Some(b) => {
                return Err(Error::LengthMismatch {
                    left: trend.len(),
                    right: b.len(),
                })
            }
            None => prof.beta,
        };
        let resid = &means - &f * &beta;
        let weights = prof.factor.solve_vec(&resid);
        let log_likelihood = log_likelihood_from(&prof.factor, &prof.factor.whiten_vec(&resid));
        Ok(Self {
            trend,
            beta: beta.as_slice().to_vec(),
            params,
            sigma_eps,
            ed,
            log_likelihood,
            factor: prof.factor,
            gls: prof.gls,
            weights,
        })
    }

    pub fn nugget(&self) -> f64 {
        self.factor.nugget()
    }

    pub fn predict(&self, x: &[f64]) -> Result<Prediction> {
        predict_sk(self, x)
    }

    pub fn to_record(&self) -> SkModelRecord {
        SkModelRecord {
            trend: self.trend.clone(),
            beta: self.beta.clone(),
            theta: self.params.theta.clone(),
            sigma2: self.params.sigma2,
            sigma_eps: self.sigma_eps.clone(),
            ed: self.ed.clone(),
        }
    }

    pub fn from_record(record: SkModelRecord) -> Result<Self> {
        let params = CorrelationParams {
            theta: record.theta,
            sigma2: record.sigma2,
        };
        Self::build(record.trend, record.ed, params, record.sigma_eps, Some(record.beta))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_record())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_record(serde_json::from_str(text)?)
    }
}

/// Search box for the genes `(log10 θ_1, …, log10 θ_M, log10 σ²)`.
pub fn sk_log_bounds(ed: &ExperimentalDesign, sigma_eps: &[f64]) -> Vec<(f64, f64)> {
    let mut bounds = theta_log_bounds(&ed.points);
    let k = ed.sample_means.len() as f64;
    let mean = ed.sample_means.iter().sum::<f64>() / k;
    let mut s2 = ed.sample_means.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / k;
    if !(s2 > 0.0) {
        let noise = sigma_eps.iter().sum::<f64>() / k;
        s2 = if noise > 0.0 { noise } else { 1.0 };
    }
    bounds.push(((SIGMA2_RANGE.0 * s2).log10(), (SIGMA2_RANGE.1 * s2).log10()));
    bounds
}

fn params_from_genes(g: &[f64]) -> CorrelationParams {
    let (theta, s) = g.split_at(g.len() - 1);
    CorrelationParams {
        theta: theta.iter().map(|v| 10f64.powf(*v)).collect(),
        sigma2: 10f64.powf(s[0]),
    }
}

/// Maximizes the profiled log-likelihood over `(θ, σ²)` with the genetic
/// algorithm; β is the GLS estimate at each candidate.
pub fn fit_sk(trend: TrendModel, ed: ExperimentalDesign, config: &GaConfig) -> Result<SkModel> {
    check_design(&ed.points, ed.sample_means.len(), &trend)?;
    let sigma_eps = floored_intrinsic_covariance(&ed)?;
    let f = trend.matrix(&ed.points)?;
    let means = DVector::from_column_slice(&ed.sample_means);
    let bounds = sk_log_bounds(&ed, &sigma_eps);
    let objective = |g: &[f64]| {
        profile(&ed.points, &f, &params_from_genes(g), &sigma_eps, &means).map_or(f64::NAN, |p| p.log_likelihood)
    };
    let res = ga_maximize(objective, &bounds, config)?;
    SkModel::build(trend, ed, params_from_genes(&res.best), sigma_eps, None)
}

/// Predictor `f(x)ᵀβ̂ + cᵀ(Σ_Z + Σ_ε)⁻¹(M̄ − Fβ̂)` and its mean-squared error
/// `σ² − cᵀ(Σ_Z + Σ_ε)⁻¹c + γᵀ(Fᵀ(Σ_Z + Σ_ε)⁻¹F)⁻¹γ`, where `c = Σ_Z(x, ·)`
/// and `γ = f(x) − Fᵀ(Σ_Z + Σ_ε)⁻¹c`.
pub fn predict_sk(model: &SkModel, x: &[f64]) -> Result<Prediction> {
    let fx = DVector::from_vec(model.trend.row(x)?);
    let s2 = model.params.sigma2;
    let mut c = correlation_vector(&model.ed.points, x, &model.params.theta) * s2;
    let prior = s2 + coincident_nugget(&model.ed.points, x, &mut c, model.factor.nugget());
    let mean = fx.dot(&DVector::from_column_slice(&model.beta)) + c.dot(&model.weights);
    let cw = model.factor.whiten_vec(&c);
    let gamma = fx - model.gls.whitened_trend.transpose() * &cw;
    let mse = prior - cw.norm_squared() + model.gls.inflation(&gamma);
    Ok(Prediction::new(mean, mse, s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kriging::{fit_kriging_with_theta, kriging_log_likelihood};
    use crate::polychaos::{enumerate_basis, InputScaling};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn design(rng: &mut ChaCha8Rng, k: usize, noise: f64) -> ExperimentalDesign {
        let points: Vec<Vec<f64>> = (0..k).map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)]).collect();
        let means: Vec<f64> = points
            .iter()
            .map(|p| (3.0 * p[0]).sin() + p[1] * p[1] + noise * rng.random_range(-1.0..1.0))
            .collect();
        let vars: Vec<f64> = (0..k).map(|_| noise * rng.random_range(0.5..2.0)).collect();
        ExperimentalDesign::with_known_variances(points, means, vars, vec![1; k]).unwrap()
    }

    fn linear_trend(dim: usize) -> TrendModel {
        TrendModel::full_pce(enumerate_basis(dim, 1, 1.0).unwrap(), InputScaling::identity(dim)).unwrap()
    }

    #[test]
    fn likelihood_two_point_closed_form() {
        // far-apart points: correlation underflows, covariance is diagonal
        let points = vec![vec![0.0], vec![100.0]];
        let params = CorrelationParams {
            theta: vec![1.0],
            sigma2: 2.0,
        };
        let f = DMatrix::from_element(2, 1, 1.0);
        let beta = DVector::from_vec(vec![0.5]);
        let means = DVector::from_vec(vec![1.5, -0.5]);
        let eps = [0.5, 1.0];
        let ll = sk_log_likelihood(&points, &f, &beta, &params, &eps, &means).unwrap();
        // the first nugget rung always succeeds here
        let nug = crate::linalg::NUGGET_START * 2.75;
        let (c1, c2): (f64, f64) = (2.5 + nug, 3.0 + nug);
        let expect = -0.5 * (2.0 * (2.0 * std::f64::consts::PI).ln() + (c1 * c2).ln() + 1.0 / c1 + 1.0 / c2);
        assert!((ll - expect).abs() < 1e-12, "{ll} vs {expect}");
    }

    #[test]
    fn likelihood_reduces_to_kriging() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let points: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 / 9.0]).collect();
        let y = DVector::from_fn(10, |_, _| rng.random_range(-1.0..1.0));
        let f = DMatrix::from_fn(10, 2, |i, j| if j == 0 { 1.0 } else { points[i][0] });
        let beta = DVector::from_vec(vec![0.2, -0.4]);
        let params = CorrelationParams {
            theta: vec![20.0],
            sigma2: 1.7,
        };
        let sk = sk_log_likelihood(&points, &f, &beta, &params, &[0.0; 10], &y).unwrap();
        let uk = kriging_log_likelihood(&points, &f, &beta, &params, &y).unwrap();
        assert!((sk - uk).abs() < 1e-10 * uk.abs().max(1.0));
    }

    #[test]
    fn larger_noise_discounts_misfit() {
        let points = vec![vec![0.0], vec![0.5], vec![1.0]];
        let f = DMatrix::from_element(3, 1, 1.0);
        let beta = DVector::from_vec(vec![0.0]);
        let means = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let params = CorrelationParams {
            theta: vec![3.0],
            sigma2: 1.0,
        };
        let quad = |eps: &[f64]| {
            let factor = SpdFactor::new(sk_covariance(&points, &params, eps)).unwrap();
            factor.whiten_vec(&(&means - &f * &beta)).norm_squared()
        };
        let v = [0.3, 0.6, 0.2];
        let v2: Vec<f64> = v.iter().map(|x| 2.0 * x).collect();
        assert!(quad(&v2) < quad(&v));
    }

    #[test]
    fn gls_matches_weighted_least_squares() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ed = design(&mut rng, 20, 0.1);
        let trend = linear_trend(2);
        let params = CorrelationParams {
            theta: vec![4.0, 2.0],
            sigma2: 0.8,
        };
        let m = SkModel::with_params(trend.clone(), ed.clone(), params.clone()).unwrap();
        let c = sk_covariance(&ed.points, &params, &m.sigma_eps) + DMatrix::identity(20, 20) * m.nugget();
        let ci = c.try_inverse().unwrap();
        let f = trend.matrix(&ed.points).unwrap();
        let y = DVector::from_column_slice(&ed.sample_means);
        let oracle = (f.transpose() * &ci * &f).try_inverse().unwrap() * f.transpose() * &ci * &y;
        let beta = DVector::from_vec(m.beta.clone());
        assert!((&beta - &oracle).norm() <= 1e-8 * oracle.norm());
        // normal equations
        let ne = f.transpose() * &ci * (&y - &f * &beta);
        assert!(ne.norm() <= 1e-8 * (f.transpose() * &ci * &y).norm());
    }

    #[test]
    fn matches_dense_oracle() {
        let points: Vec<Vec<f64>> = [0.1, 0.35, 0.6, 0.9].iter().map(|v| vec![*v]).collect();
        let ed = ExperimentalDesign::with_known_variances(points.clone(), vec![0.3, 1.1, 0.7, -0.2], vec![0.05, 0.2, 0.1, 0.4], vec![1, 2, 1, 4]).unwrap();
        let trend = linear_trend(1);
        let params = CorrelationParams {
            theta: vec![6.0],
            sigma2: 0.9,
        };
        let m = SkModel::with_params(trend, ed, params).unwrap();
        let eps = [0.05, 0.1, 0.1, 0.1];
        let mut c = DMatrix::from_fn(4, 4, |i, j| 0.9 * (-6.0 * (points[i][0] - points[j][0]).powi(2)).exp());
        for i in 0..4 {
            c[(i, i)] += eps[i] + m.nugget();
        }
        let ci = c.try_inverse().unwrap();
        let f = DMatrix::from_fn(4, 2, |i, j| if j == 0 { 1.0 } else { 3f64.sqrt() * points[i][0] });
        let y = DVector::from_vec(vec![0.3, 1.1, 0.7, -0.2]);
        let a_inv = (f.transpose() * &ci * &f).try_inverse().unwrap();
        let beta = &a_inv * f.transpose() * &ci * &y;
        for x in [0.0, 0.35, 0.5, 1.3] {
            let mut cx = DVector::from_iterator(4, points.iter().map(|p| 0.9 * (-6.0 * (p[0] - x).powi(2)).exp()));
            // a design point shares its nugget with the prediction
            let mut prior = 0.9;
            if let Some(i) = points.iter().position(|p| p[0] == x) {
                cx[i] += m.nugget();
                prior += m.nugget();
            }
            let fx = DVector::from_vec(vec![1.0, 3f64.sqrt() * x]);
            let mean = fx.dot(&beta) + (cx.transpose() * &ci * (&y - &f * &beta))[0];
            let gamma = &fx - f.transpose() * &ci * &cx;
            let mse = prior - (cx.transpose() * &ci * &cx)[0] + (gamma.transpose() * &a_inv * &gamma)[0];
            let p = m.predict(&[x]).unwrap();
            assert!((p.mean - mean).abs() < 1e-10);
            assert!((p.mse - mse).abs() < 1e-10);
            let (lo, hi) = p.ci95();
            assert!(lo <= p.mean && p.mean <= hi);
        }
    }

    #[test]
    fn noise_free_limit_matches_kriging() {
        let points: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64 / 11.0]).collect();
        let y: Vec<f64> = points.iter().map(|p| (5.0 * p[0]).cos()).collect();
        let trend = linear_trend(1);
        let uk = fit_kriging_with_theta(trend.clone(), &points, &y, &[15.0]).unwrap();
        let ed = ExperimentalDesign::with_known_variances(points.clone(), y.clone(), vec![0.0; 12], vec![1; 12]).unwrap();
        let sk = SkModel::with_params(trend, ed, uk.params.clone()).unwrap();
        for i in 0..25 {
            let x = [i as f64 / 20.0 - 0.1];
            let (a, b) = (uk.predict(&x).unwrap(), sk.predict(&x).unwrap());
            assert!((a.mean - b.mean).abs() <= 1e-6 * a.mean.abs().max(1e-3));
            assert!((a.mse - b.mse).abs() <= 1e-6 * a.mse.max(1e-8 * uk.params.sigma2));
        }
        for (p, v) in points.iter().zip(&y) {
            let pr = sk.predict(p).unwrap();
            assert!((pr.mean - v).abs() < 1e-8);
            assert!(pr.mse <= 1e-8 * sk.params.sigma2);
        }
    }

    #[test]
    fn heavy_noise_shrinks_to_trend() {
        let points: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64 / 5.0]).collect();
        let means = vec![0.0, 0.1, 5.0, -0.1, 0.05, 0.0];
        let mut vars = vec![0.01; 6];
        vars[2] = 0.01 * 1e6;
        let ed = ExperimentalDesign::with_known_variances(points, means, vars, vec![1; 6]).unwrap();
        let params = CorrelationParams {
            theta: vec![10.0],
            sigma2: 1.0,
        };
        let m = SkModel::with_params(TrendModel::constant(1), ed, params).unwrap();
        let p = m.predict(&[0.4]).unwrap();
        assert!((p.mean - m.beta[0]).abs() < 0.1, "{} vs {}", p.mean, m.beta[0]);
    }

    #[test]
    fn fit_beats_random_probes_and_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ed = design(&mut rng, 25, 0.05);
        let trend = linear_trend(2);
        let cfg = GaConfig::default().with_seed(5);
        let m = fit_sk(trend.clone(), ed.clone(), &cfg).unwrap();
        let bounds = sk_log_bounds(&ed, &m.sigma_eps);
        for _ in 0..32 {
            let g: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.random_range(lo..hi)).collect();
            if let Ok(probe) = SkModel::with_params(trend.clone(), ed.clone(), params_from_genes(&g)) {
                assert!(m.log_likelihood >= probe.log_likelihood - 1e-9);
            }
        }
        let order: Vec<usize> = (0..25).rev().collect();
        let pm = SkModel::with_params(trend, ed.permuted(&order), m.params.clone()).unwrap();
        for x in [[0.2, 0.3], [0.9, 0.1]] {
            assert!((pm.predict(&x).unwrap().mean - m.predict(&x).unwrap().mean).abs() < 1e-10);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ed = design(&mut rng, 10, 0.1);
        let params = CorrelationParams {
            theta: vec![3.0, 1.0],
            sigma2: 0.5,
        };
        let m = SkModel::with_params(linear_trend(2), ed, params).unwrap();
        let back = SkModel::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back.to_record(), m.to_record());
        let x = [0.4, 0.6];
        assert_eq!(back.predict(&x).unwrap(), m.predict(&x).unwrap());
    }
}
