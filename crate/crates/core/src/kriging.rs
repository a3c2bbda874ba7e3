//! Universal Kriging with a Gaussian correlation function.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Gls, SpdFactor};
use crate::optimize::{ga_maximize, GaConfig};
use crate::trend::TrendModel;

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959964;

/// Range of `θ_i · L_i²` searched by the optimizer, `L_i` being the extent of
/// the design along input `i`.
pub const THETA_RANGE: (f64, f64) = (1e-3, 1e3);

/// Negative predicted variances smaller than this fraction of the process
/// variance are rounding noise and are clamped silently.
const MSE_NEG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationParams {
    pub theta: Vec<f64>,
    pub sigma2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub mean: f64,
    pub mse: f64,
}

impl Prediction {
    /// Builds a prediction, clamping a negative variance at zero.
    pub(crate) fn new(mean: f64, mse: f64, scale: f64) -> Self {
        if mse < -MSE_NEG_TOL * scale {
            log::warn!("negative predicted variance {mse:e} clamped to zero");
        }
        Self {
            mean,
            mse: mse.max(0.0),
        }
    }

    /// `mean ∓ 1.96 √mse`.
    pub fn ci95(&self) -> (f64, f64) {
        let h = Z_95 * self.mse.sqrt();
        (self.mean - h, self.mean + h)
    }
}

/// `exp(−Σ θ_i (x_i − x′_i)²)`.
pub fn gaussian_correlation(x: &[f64], y: &[f64], theta: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    debug_assert_eq!(x.len(), theta.len());
    let s: f64 = x
        .iter()
        .zip(y)
        .zip(theta)
        .map(|((a, b), t)| t * (a - b) * (a - b))
        .sum();
    (-s).exp()
}

pub fn correlation_matrix(points: &[Vec<f64>], theta: &[f64]) -> DMatrix<f64> {
    let k = points.len();
    let mut r = DMatrix::identity(k, k);
    for i in 0..k {
        for j in 0..i {
            let v = gaussian_correlation(&points[i], &points[j], theta);
            r[(i, j)] = v;
            r[(j, i)] = v;
        }
    }
    r
}

pub fn correlation_vector(points: &[Vec<f64>], x: &[f64], theta: &[f64]) -> DVector<f64> {
    DVector::from_iterator(points.len(), points.iter().map(|p| gaussian_correlation(p, x, theta)))
}

/// Adds the factorization nugget to the entries of `r` whose design point
/// coincides with `x` and returns the nugget to add to the prior variance
/// (zero when `x` is not a design point). The nugget then acts as a
/// zero-distance covariance, so the predictor interpolates exactly.
pub(crate) fn coincident_nugget(points: &[Vec<f64>], x: &[f64], r: &mut DVector<f64>, nugget: f64) -> f64 {
    let mut hit = false;
    for (i, p) in points.iter().enumerate() {
        if p.as_slice() == x {
            r[i] += nugget;
            hit = true;
        }
    }
    if hit {
        nugget
    } else {
        0.0
    }
}

/// Generalized least-squares trend coefficients and process variance:
/// `β̂ = (FᵀR⁻¹F)⁻¹FᵀR⁻¹y`, `σ̂² = (y − Fβ̂)ᵀR⁻¹(y − Fβ̂) / k`.
pub fn blue_estimates(trend: &DMatrix<f64>, factor: &SpdFactor, y: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let gls = Gls::new(factor, trend)?;
    let yw = factor.whiten_vec(y);
    let beta = gls.beta(&yw);
    let resid = yw - &gls.whitened_trend * &beta;
    Ok((beta, resid.norm_squared() / y.len() as f64))
}

/// Gaussian log-likelihood of `y` under the model `Fβ + Z` with
/// `Cov(Z) = σ²R(θ)`.
pub fn kriging_log_likelihood(
    points: &[Vec<f64>],
    trend: &DMatrix<f64>,
    beta: &DVector<f64>,
    params: &CorrelationParams,
    y: &DVector<f64>,
) -> Result<f64> {
    let k = y.len() as f64;
    let factor = SpdFactor::new(correlation_matrix(points, &params.theta))?;
    let resid = factor.whiten_vec(&(y - trend * beta));
    Ok(-0.5
        * (k * (2.0 * std::f64::consts::PI).ln()
            + k * params.sigma2.ln()
            + factor.log_det()
            + resid.norm_squared() / params.sigma2))
}

/// Search box for `log10 θ`.
pub fn theta_log_bounds(points: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let dim = points.first().map_or(0, |p| p.len());
    (0..dim)
        .map(|d| {
            let lo = points.iter().map(|p| p[d]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[d]).fold(f64::NEG_INFINITY, f64::max);
            let extent = if hi > lo { hi - lo } else { 1.0 };
            let l2 = (extent * extent).log10();
            (THETA_RANGE.0.log10() - l2, THETA_RANGE.1.log10() - l2)
        })
        .collect()
}

pub(crate) fn check_design(points: &[Vec<f64>], n_values: usize, trend: &TrendModel) -> Result<()> {
    if points.len() != n_values {
        return Err(Error::LengthMismatch {
            left: points.len(),
            right: n_values,
        });
    }
    for p in points {
        if p.len() != trend.dim() {
            return Err(Error::DimensionMismatch {
                expected: trend.dim(),
                actual: p.len(),
            });
        }
    }
    if points.len() <= trend.len() {
        return Err(Error::InvalidArgument(format!(
            "{} design points cannot calibrate {} trend terms",
            points.len(),
            trend.len()
        )));
    }
    Ok(())
}

/// `log σ̂²(θ) + log|R(θ)| / k`, the logarithm of the concentrated objective.
fn log_concentrated_objective(points: &[Vec<f64>], trend: &DMatrix<f64>, y: &DVector<f64>, theta: &[f64]) -> Result<f64> {
    let factor = SpdFactor::new(correlation_matrix(points, theta))?;
    let (_, sigma2) = blue_estimates(trend, &factor, y)?;
    Ok(sigma2.max(f64::MIN_POSITIVE).ln() + factor.log_det() / y.len() as f64)
}

/// The concentrated objective `σ̂²(θ) |R(θ)|^{1/k}` minimized by
/// [`fit_kriging`], reported in log form.
pub fn concentrated_objective(trend: &TrendModel, points: &[Vec<f64>], y: &[f64], theta: &[f64]) -> Result<f64> {
    let f = trend.matrix(points)?;
    log_concentrated_objective(points, &f, &DVector::from_column_slice(y), theta)
}

#[derive(Debug, Clone)]
pub struct KrigingModel {
    pub trend: TrendModel,
    pub beta: Vec<f64>,
    pub params: CorrelationParams,
    pub ed_points: Vec<Vec<f64>>,
    pub ed_values: Vec<f64>,
    factor: SpdFactor,
    gls: Gls,
    /// `R⁻¹(y − Fβ̂)`.
    weights: DVector<f64>,
}

impl KrigingModel {
    pub fn nugget(&self) -> f64 {
        self.factor.nugget()
    }

    pub fn predict(&self, x: &[f64]) -> Result<Prediction> {
        predict_kriging(self, x)
    }
}

/// Fits θ by minimizing the concentrated objective with the genetic
/// algorithm over `log10 θ`, then sets β̂ and σ̂² at the optimum.
pub fn fit_kriging(trend: TrendModel, points: &[Vec<f64>], y: &[f64], config: &GaConfig) -> Result<KrigingModel> {
    check_design(points, y.len(), &trend)?;
    let f = trend.matrix(points)?;
    let yv = DVector::from_column_slice(y);
    let bounds = theta_log_bounds(points);
    let objective = |g: &[f64]| {
        let theta: Vec<f64> = g.iter().map(|v| 10f64.powf(*v)).collect();
        log_concentrated_objective(points, &f, &yv, &theta).map_or(f64::NAN, |v| -v)
    };
    let res = ga_maximize(objective, &bounds, config)?;
    let theta: Vec<f64> = res.best.iter().map(|v| 10f64.powf(*v)).collect();
    fit_kriging_with_theta(trend, points, y, &theta)
}

/// Kriging model at fixed correlation parameters θ.
pub fn fit_kriging_with_theta(trend: TrendModel, points: &[Vec<f64>], y: &[f64], theta: &[f64]) -> Result<KrigingModel> {
    check_design(points, y.len(), &trend)?;
    if theta.len() != trend.dim() || theta.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::InvalidArgument(format!("invalid correlation parameters {theta:?}")));
    }
    let f = trend.matrix(points)?;
    let yv = DVector::from_column_slice(y);
    let factor = SpdFactor::new(correlation_matrix(points, theta))?;
    let gls = Gls::new(&factor, &f)?;
    let beta = gls.beta(&factor.whiten_vec(&yv));
    let resid = &yv - &f * &beta;
    let sigma2 = factor.whiten_vec(&resid).norm_squared() / y.len() as f64;
    let weights = factor.solve_vec(&resid);
    Ok(KrigingModel {
        trend,
        beta: beta.as_slice().to_vec(),
        params: CorrelationParams {
            theta: theta.to_vec(),
            sigma2,
        },
        ed_points: points.to_vec(),
        ed_values: y.to_vec(),
        factor,
        gls,
        weights,
    })
}

/// Kriging mean `f(x)ᵀβ̂ + r(x)ᵀR⁻¹(y − Fβ̂)` and mean-squared error
/// `σ̂²(1 − rᵀR⁻¹r + uᵀ(FᵀR⁻¹F)⁻¹u)` with `u = FᵀR⁻¹r − f(x)`.
pub fn predict_kriging(model: &KrigingModel, x: &[f64]) -> Result<Prediction> {
    let fx = DVector::from_vec(model.trend.row(x)?);
    let mut r = correlation_vector(&model.ed_points, x, &model.params.theta);
    let prior = 1.0 + coincident_nugget(&model.ed_points, x, &mut r, model.factor.nugget());
    let mean = fx.dot(&DVector::from_column_slice(&model.beta)) + r.dot(&model.weights);
    let rw = model.factor.whiten_vec(&r);
    let u = model.gls.whitened_trend.transpose() * &rw - fx;
    let s2 = model.params.sigma2;
    let mse = s2 * (prior - rw.norm_squared() + model.gls.inflation(&u));
    Ok(Prediction::new(mean, mse, s2))
}
