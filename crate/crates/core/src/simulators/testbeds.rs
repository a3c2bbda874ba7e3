use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_box(x: &[f64], dim: usize, lo: f64, hi: f64, name: &str) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: x.len(),
        });
    }
    match x.iter().find(|v| !(**v >= lo && **v <= hi)) {
        Some(&v) => Err(Error::OutOfDomain {
            value: v,
            domain: name.into(),
        }),
        None => Ok(()),
    }
}

pub const EGGBOX_DOMAIN: [(f64, f64); 2] = [(-1.0, 1.0), (-1.0, 1.0)];

/// `sin(9x₁²) + sin(9x₂²)`.
pub fn eggbox_mean(x: &[f64]) -> f64 {
    (9.0 * x[0] * x[0]).sin() + (9.0 * x[1] * x[1]).sin()
}

/// Noise variance `2 + cos(π + (x₁ + x₂)/2)`, always in `[1, 3]`.
pub fn eggbox_variance(x: &[f64]) -> f64 {
    2.0 + (PI + 0.5 * (x[0] + x[1])).cos()
}

/// One noisy evaluation of the egg-box surface on `[−1, 1]²`.
pub fn eggbox<R: Rng + ?Sized>(x: &[f64], rng: &mut R) -> Result<f64> {
    check_box(x, 2, -1.0, 1.0, "[-1, 1]^2")?;
    let z: f64 = StandardNormal.sample(rng);
    Ok(eggbox_mean(x) + eggbox_variance(x).sqrt() * z)
}

pub const ISHIGAMI_DOMAIN: [(f64, f64); 3] = [(-PI, PI), (-PI, PI), (-PI, PI)];

/// How the second parameter of the Ishigami noise `N(0, √|f|)` is read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseReading {
    /// Variance `√|f|`.
    #[default]
    Variance,
    /// Standard deviation `√|f|`, that is variance `|f|`.
    StandardDeviation,
}

/// `sin x₁ + 7 sin²x₂ + 0.1 x₃⁴ sin x₁`.
pub fn ishigami_mean(x: &[f64]) -> f64 {
    x[0].sin() + 7.0 * x[1].sin().powi(2) + 0.1 * x[2].powi(4) * x[0].sin()
}

pub fn ishigami_variance(x: &[f64], reading: NoiseReading) -> f64 {
    let f = ishigami_mean(x).abs();
    match reading {
        NoiseReading::Variance => f.sqrt(),
        NoiseReading::StandardDeviation => f,
    }
}

/// One noisy evaluation of the Ishigami function on `[−π, π]³`.
pub fn ishigami<R: Rng + ?Sized>(x: &[f64], reading: NoiseReading, rng: &mut R) -> Result<f64> {
    check_box(x, 3, -PI, PI, "[-pi, pi]^3")?;
    let z: f64 = StandardNormal.sample(rng);
    Ok(ishigami_mean(x) + ishigami_variance(x, reading).sqrt() * z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eggbox_values() {
        assert_eq!(eggbox_mean(&[0.0, 0.0]), 0.0);
        assert!((eggbox_mean(&[1.0, 1.0]) - 0.8242).abs() < 1e-4);
        for i in 0..=20 {
            for j in 0..=20 {
                let x = [i as f64 / 10.0 - 1.0, j as f64 / 10.0 - 1.0];
                let v = eggbox_variance(&x);
                assert!((1.0..=3.0).contains(&v));
            }
        }
        assert!(eggbox(&[1.5, 0.0], &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn eggbox_noise_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 10_000;
        let out: Vec<f64> = (0..n).map(|_| eggbox(&[0.0, 0.0], &mut rng).unwrap()).collect();
        let mean = out.iter().sum::<f64>() / n as f64;
        let var = out.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((var - 1.0).abs() < 0.05, "{var}");
    }

    #[test]
    fn ishigami_values() {
        assert!((ishigami_mean(&[PI / 2.0, 0.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((ishigami_mean(&[0.0, PI / 2.0, 0.0]) - 7.0).abs() < 1e-14);
        assert_eq!(ishigami_mean(&[0.0, 0.0, 2.5]), 0.0);
        assert_eq!(ishigami_variance(&[0.0, 0.0, 2.5], NoiseReading::Variance), 0.0);
        let x = [0.0, PI / 2.0, 0.0];
        assert!((ishigami_variance(&x, NoiseReading::Variance) - 7f64.sqrt()).abs() < 1e-12);
        assert!((ishigami_variance(&x, NoiseReading::StandardDeviation) - 7.0).abs() < 1e-12);
        assert!(ishigami(&[4.0, 0.0, 0.0], NoiseReading::Variance, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let x = [0.3, -1.0, 2.0];
        let a = ishigami(&x, NoiseReading::Variance, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = ishigami(&x, NoiseReading::Variance, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
    }
}
