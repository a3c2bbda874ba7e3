//! Accuracy metrics on a validation set.

use crate::error::{Error, Result};

fn check(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidArgument("empty validation set".into()));
    }
    Ok(())
}

fn rms_diff(a: &[f64], b: &[f64]) -> f64 {
    (a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64).sqrt()
}

/// Empirical root mean squared error `√(Σ(ŷ_i − y_i)² / K)`.
pub fn ermse(predictions: &[f64], truth: &[f64]) -> Result<f64> {
    check(predictions, truth)?;
    Ok(rms_diff(predictions, truth))
}

/// Normalized maximum absolute error `max|ŷ_i − y_i| / (K σ_VS)`.
pub fn nmae(predictions: &[f64], truth: &[f64], sigma_vs: f64) -> Result<f64> {
    check(predictions, truth)?;
    if !(sigma_vs > 0.0) {
        return Err(Error::InvalidArgument(format!("sigma_vs must be positive, got {sigma_vs}")));
    }
    let max = predictions.iter().zip(truth).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(max / (predictions.len() as f64 * sigma_vs))
}

/// `σ_VS = √(Σ(M̄(x_i) − M(x_i))² / K)`.
pub fn sigma_vs(sample_means: &[f64], truth: &[f64]) -> Result<f64> {
    check(sample_means, truth)?;
    Ok(rms_diff(sample_means, truth))
}
