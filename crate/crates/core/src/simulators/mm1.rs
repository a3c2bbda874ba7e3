use rand::Rng;
use rand_distr::{Distribution, Exp, StandardNormal};

use crate::error::{Error, Result};

/// Fraction of the run length discarded as warm-up.
pub const WARM_UP_FRACTION: f64 = 0.1;

fn check_rate(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            value: x,
            domain: "(0, 1)".into(),
        })
    }
}

/// Steady-state mean sojourn time `1/(1 − x)` of an M/M/1 queue with
/// arrival rate `x` and unit service rate, and the asymptotic variance
/// `2x(1 + x) / (T(1 − x)⁴)` of its estimate over a run of length `T`.
pub fn mm1_true(x: f64, run_length: f64) -> Result<(f64, f64)> {
    check_rate(x)?;
    if !(run_length > 0.0) {
        return Err(Error::InvalidArgument(format!("run length must be positive, got {run_length}")));
    }
    let y = 1.0 / (1.0 - x);
    let v = 2.0 * x * (1.0 + x) / (run_length * (1.0 - x).powi(4));
    Ok((y, v))
}

/// Simulates an initially empty M/M/1 queue (arrival rate `x`, service rate
/// 1) with the Lindley recursion and returns the average sojourn time of the
/// customers arriving in `[0.1 T, T]`.
pub fn mm1_simulate<R: Rng + ?Sized>(x: f64, run_length: f64, rng: &mut R) -> Result<f64> {
    mm1_true(x, run_length)?;
    let arrivals = Exp::new(x).expect("rate checked");
    let service = Exp::new(1.0).expect("unit rate");
    let warm_up = WARM_UP_FRACTION * run_length;
    let mut t = 0.0;
    let mut wait = 0.0;
    let mut sum = 0.0;
    let mut count = 0usize;
    let mut prev_service = 0.0;
    let mut first = true;
    loop {
        let gap: f64 = arrivals.sample(rng);
        t += gap;
        if first {
            first = false;
        } else {
            wait = f64::max(0.0, wait + prev_service - gap);
        }
        let s: f64 = service.sample(rng);
        prev_service = s;
        if t > run_length && count > 0 {
            break;
        }
        if t >= warm_up {
            sum += wait + s;
            count += 1;
        }
    }
    Ok(sum / count as f64)
}

/// The known-variance protocol: a Gaussian draw around the analytic mean
/// with the analytic variance at run length `T`.
pub fn synthetic_known_noise<R: Rng + ?Sized>(x: f64, run_length: f64, rng: &mut R) -> Result<f64> {
    let (y, v) = mm1_true(x, run_length)?;
    let z: f64 = StandardNormal.sample(rng);
    Ok(y + v.sqrt() * z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn analytic_values() {
        assert_eq!(mm1_true(0.5, 1.0).unwrap().0, 2.0);
        let (_, v) = mm1_true(0.9, 6000.0).unwrap();
        assert!((v - 5.7).abs() < 1e-9);
        let (y, v) = mm1_true(1e-9, 10.0).unwrap();
        assert!((y - 1.0).abs() < 1e-8 && v < 1e-8);
        assert!(mm1_true(1.0, 10.0).is_err());
        assert!(mm1_true(0.0, 10.0).is_err());
        assert!(mm1_true(0.5, 0.0).is_err());
    }

    #[test]
    fn long_run_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = mm1_simulate(0.5, 1e7, &mut rng).unwrap();
        assert!((y - 2.0).abs() < 0.04, "{y}");
    }

    #[test]
    fn light_traffic_mean_within_three_se() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let out: Vec<f64> = (0..50).map(|_| mm1_simulate(0.3, 1e5, &mut rng).unwrap()).collect();
        let mean = out.iter().sum::<f64>() / 50.0;
        let var = out.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 49.0;
        let se = (var / 50.0).sqrt();
        assert!((mean - 1.0 / 0.7).abs() <= 3.0 * se, "{mean} ± {se}");
    }

    #[test]
    fn deterministic_per_seed() {
        let a = mm1_simulate(0.7, 500.0, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = mm1_simulate(0.7, 500.0, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn synthetic_noise_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (y, v) = mm1_true(0.6, 6000.0).unwrap();
        let n = 10_000;
        let out: Vec<f64> = (0..n).map(|_| synthetic_known_noise(0.6, 6000.0, &mut rng).unwrap()).collect();
        let mean = out.iter().sum::<f64>() / n as f64;
        let var = out.iter().map(|o| (o - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((var / v - 1.0).abs() < 0.05);
        assert!((mean - y).abs() <= 3.0 * (v / n as f64).sqrt());
        assert!((y - 2.5).abs() < 1e-12);
    }
}
