//! Deterministic trend `f(x)ᵀβ` shared by the kriging and stochastic kriging
//! models.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polychaos::{InputScaling, PceBasis, PolynomialFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrendKind {
    Constant,
    FullPce,
    LarPce,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendModel {
    pub kind: TrendKind,
    pub basis: PceBasis,
    /// Map from physical inputs to the basis families' domain.
    pub scaling: InputScaling,
}

impl TrendModel {
    pub fn constant(dim: usize) -> Self {
        Self {
            kind: TrendKind::Constant,
            basis: PceBasis::constant(dim, PolynomialFamily::LegendreUniform),
            scaling: InputScaling::identity(dim),
        }
    }

    pub fn full_pce(basis: PceBasis, scaling: InputScaling) -> Result<Self> {
        Self::with_kind(TrendKind::FullPce, basis, scaling)
    }

    pub fn lar_pce(basis: PceBasis, scaling: InputScaling) -> Result<Self> {
        Self::with_kind(TrendKind::LarPce, basis, scaling)
    }

    fn with_kind(kind: TrendKind, basis: PceBasis, scaling: InputScaling) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        if scaling.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                actual: scaling.dim(),
            });
        }
        Ok(Self { kind, basis, scaling })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Number of trend functions.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `f(x)` at a physical-domain point.
    pub fn row(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        self.basis.eval_row(&self.scaling.apply(x))
    }

    /// Trend matrix with one row `f(x_i)ᵀ` per point.
    pub fn matrix(&self, points: &[Vec<f64>]) -> Result<DMatrix<f64>> {
        let mut f = DMatrix::zeros(points.len(), self.len());
        for (i, x) in points.iter().enumerate() {
            let row = self.row(x)?;
            for (j, v) in row.into_iter().enumerate() {
                f[(i, j)] = v;
            }
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polychaos::enumerate_basis;

    #[test]
    fn constant_trend_is_ones() {
        let t = TrendModel::constant(2);
        let f = t.matrix(&[vec![0.1, 5.0], vec![-3.0, 2.0]]).unwrap();
        assert_eq!(f, DMatrix::from_element(2, 1, 1.0));
    }

    #[test]
    fn scaled_rows() {
        let basis = enumerate_basis(1, 1, 1.0).unwrap();
        let t = TrendModel::full_pce(basis, InputScaling::to_unit_interval(&[(0.0, 2.0)])).unwrap();
        let row = t.row(&[2.0]).unwrap();
        assert!((row[1] - 3f64.sqrt()).abs() < 1e-15);
        assert!(t.row(&[1.0, 1.0]).is_err());
    }
}
