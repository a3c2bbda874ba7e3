use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::basis::{information_matrix, PceBasis};
use super::family::InputScaling;
use crate::error::{Error, Result};
use crate::linalg::ThinQr;

/// Leverages at or above `1 - LEVERAGE_TOL` make the closed-form LOO error
/// meaningless.
pub const LEVERAGE_TOL: f64 = 1e-10;

/// A polynomial chaos expansion fitted by ordinary least squares.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PceModel {
    pub basis: PceBasis,
    pub coefficients: Vec<f64>,
    /// Closed-form leave-one-out error; `None` when it is undefined for the
    /// training data (constant response or unit leverage).
    pub loo_error: Option<f64>,
    pub input_scaling: InputScaling,
    pub residuals: Vec<f64>,
}

impl PceModel {
    /// Evaluates the expansion at a physical-domain point.
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        let z = self.input_scaling.apply(x);
        let row = self.basis.eval_row(&z)?;
        Ok(row.iter().zip(&self.coefficients).map(|(a, b)| a * b).sum())
    }
}

/// Ordinary least-squares fit `â = argmin ‖Ψa − y‖²` through a thin QR of
/// the information matrix. Points must already be in the families' domain.
pub fn fit_ols(basis: &PceBasis, points: &[Vec<f64>], y: &[f64]) -> Result<PceModel> {
    fit_ols_scaled(basis, &InputScaling::identity(basis.dim()), points, y)
}

/// As [`fit_ols`], but for physical-domain points mapped through `scaling`.
pub fn fit_ols_scaled(
    basis: &PceBasis,
    scaling: &InputScaling,
    points: &[Vec<f64>],
    y: &[f64],
) -> Result<PceModel> {
    if points.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: points.len(),
            right: y.len(),
        });
    }
    let scaled: Vec<Vec<f64>> = points.iter().map(|x| scaling.apply(x)).collect();
    let psi = information_matrix(basis, &scaled)?;
    let yv = DVector::from_column_slice(y);
    let (coefficients, residuals, loo) = least_squares_with_loo(&psi, &yv)?;
    Ok(PceModel {
        basis: basis.clone(),
        coefficients: coefficients.as_slice().to_vec(),
        loo_error: loo.ok(),
        input_scaling: scaling.clone(),
        residuals: residuals.as_slice().to_vec(),
    })
}

/// Solves the least-squares problem and evaluates the closed-form LOO error.
/// The outer error is a rank failure; the inner one an undefined LOO.
pub(crate) fn least_squares_with_loo(
    psi: &DMatrix<f64>,
    y: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>, Result<f64>)> {
    let qr = ThinQr::new(psi).map_err(|columns| Error::RankDeficient { columns })?;
    let coef = qr.least_squares(y);
    let residuals = y - psi * &coef;
    let loo = loo_from_q(&qr.q, &residuals, y);
    Ok((coef, residuals, loo))
}

/// `Σ (r_i / (1 − h_i))² / Σ (y_i − ȳ)²` with `h = diag(QQᵀ)`.
pub(crate) fn loo_from_q(q: &DMatrix<f64>, residuals: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
    let mean = y.mean();
    let denom: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    if denom <= 0.0 {
        return Err(Error::UndefinedLoo);
    }
    let mut numer = 0.0;
    for i in 0..q.nrows() {
        let h = q.row(i).norm_squared();
        if h >= 1.0 - LEVERAGE_TOL {
            return Err(Error::DegenerateLeverage { index: i, leverage: h });
        }
        numer += (residuals[i] / (1.0 - h)).powi(2);
    }
    Ok(numer / denom)
}

/// Closed-form leave-one-out error of a fitted expansion on its training
/// data (points in the families' domain).
pub fn loo_error(basis: &PceBasis, points: &[Vec<f64>], y: &[f64], model: &PceModel) -> Result<f64> {
    if model.coefficients.len() != basis.len() {
        return Err(Error::LengthMismatch {
            left: model.coefficients.len(),
            right: basis.len(),
        });
    }
    let psi = information_matrix(basis, points)?;
    let yv = DVector::from_column_slice(y);
    let coef = DVector::from_column_slice(&model.coefficients);
    let residuals = &yv - &psi * coef;
    let qr = ThinQr::new(&psi).map_err(|columns| Error::RankDeficient { columns })?;
    loo_from_q(&qr.q, &residuals, &yv)
}
