use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Design points with their replication counts and output summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentalDesign {
    pub points: Vec<Vec<f64>>,
    pub replications: Vec<usize>,
    pub sample_means: Vec<f64>,
    /// Per-replication output variance `V_i`: the sample variance of the
    /// replications, or the supplied value when `variances_known`. `None`
    /// for single replications without a supplied variance.
    pub variances: Vec<Option<f64>>,
    pub variances_known: bool,
    pub raw_outputs: Option<Vec<Vec<f64>>>,
}

fn check_points(points: &[Vec<f64>]) -> Result<()> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidArgument("empty experimental design".into()));
    };
    for p in points {
        if p.len() != first.len() {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                actual: p.len(),
            });
        }
    }
    Ok(())
}

impl ExperimentalDesign {
    /// Summarizes raw replication outputs: sample means and unbiased sample
    /// variances.
    pub fn from_replications(points: Vec<Vec<f64>>, outputs: Vec<Vec<f64>>) -> Result<Self> {
        check_points(&points)?;
        if points.len() != outputs.len() {
            return Err(Error::LengthMismatch {
                left: points.len(),
                right: outputs.len(),
            });
        }
        let mut means = Vec::with_capacity(points.len());
        let mut variances = Vec::with_capacity(points.len());
        for (i, out) in outputs.iter().enumerate() {
            let n = out.len();
            if n == 0 {
                return Err(Error::InsufficientReplications {
                    index: i,
                    replications: 0,
                });
            }
            let mean = out.iter().sum::<f64>() / n as f64;
            means.push(mean);
            variances.push((n >= 2).then(|| out.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64));
        }
        Ok(Self {
            replications: outputs.iter().map(Vec::len).collect(),
            points,
            sample_means: means,
            variances,
            variances_known: false,
            raw_outputs: Some(outputs),
        })
    }

    /// Design whose per-replication variances `V(x_i)` are known.
    pub fn with_known_variances(
        points: Vec<Vec<f64>>,
        sample_means: Vec<f64>,
        variances: Vec<f64>,
        replications: Vec<usize>,
    ) -> Result<Self> {
        check_points(&points)?;
        for len in [sample_means.len(), variances.len(), replications.len()] {
            if len != points.len() {
                return Err(Error::LengthMismatch {
                    left: points.len(),
                    right: len,
                });
            }
        }
        if let Some(i) = replications.iter().position(|&n| n == 0) {
            return Err(Error::InsufficientReplications {
                index: i,
                replications: 0,
            });
        }
        if let Some(v) = variances.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidArgument(format!("invalid noise variance {v}")));
        }
        Ok(Self {
            points,
            replications,
            sample_means,
            variances: variances.into_iter().map(Some).collect(),
            variances_known: true,
            raw_outputs: None,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Reorders the design points.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let pick = |v: &Vec<f64>| order.iter().map(|&i| v[i]).collect::<Vec<_>>();
        Self {
            points: order.iter().map(|&i| self.points[i].clone()).collect(),
            replications: order.iter().map(|&i| self.replications[i]).collect(),
            sample_means: pick(&self.sample_means),
            variances: order.iter().map(|&i| self.variances[i]).collect(),
            variances_known: self.variances_known,
            raw_outputs: self
                .raw_outputs
                .as_ref()
                .map(|r| order.iter().map(|&i| r[i].clone()).collect()),
        }
    }
}

/// Diagonal of the intrinsic covariance `Σ_ε = diag(V_i / n_i)`, the
/// variance of each sample mean.
pub fn intrinsic_covariance(ed: &ExperimentalDesign) -> Result<Vec<f64>> {
    ed.variances
        .iter()
        .zip(&ed.replications)
        .enumerate()
        .map(|(i, (v, &n))| match v {
            Some(v) => Ok(v / n as f64),
            None => Err(Error::InsufficientReplications {
                index: i,
                replications: n,
            }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_statistics() {
        let ed = ExperimentalDesign::from_replications(
            vec![vec![0.0], vec![1.0], vec![2.0]],
            vec![vec![1.0, 3.0], vec![5.0, 5.0, 5.0], vec![2.0, 4.0, 9.0]],
        )
        .unwrap();
        assert_eq!(ed.sample_means, vec![2.0, 5.0, 5.0]);
        assert_eq!(ed.variances[0], Some(2.0));
        let cov = intrinsic_covariance(&ed).unwrap();
        assert_eq!(cov[0], 1.0);
        assert_eq!(cov[1], 0.0);
        assert!((cov[2] - 13.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn single_replication_needs_known_variance() {
        let ed = ExperimentalDesign::from_replications(vec![vec![0.0], vec![1.0]], vec![vec![1.0, 2.0], vec![3.0]]).unwrap();
        assert_eq!(
            intrinsic_covariance(&ed),
            Err(Error::InsufficientReplications {
                index: 1,
                replications: 1
            })
        );
        let known =
            ExperimentalDesign::with_known_variances(vec![vec![0.9]], vec![10.0], vec![5.7], vec![1]).unwrap();
        assert_eq!(intrinsic_covariance(&known).unwrap(), vec![5.7]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(ExperimentalDesign::from_replications(vec![], vec![]).is_err());
        assert!(ExperimentalDesign::from_replications(vec![vec![0.0]], vec![vec![]]).is_err());
        assert!(ExperimentalDesign::with_known_variances(vec![vec![0.0]], vec![1.0], vec![-1.0], vec![1]).is_err());
        assert!(ExperimentalDesign::with_known_variances(vec![vec![0.0], vec![0.0, 1.0]], vec![1.0; 2], vec![1.0; 2], vec![1; 2]).is_err());
    }
}
