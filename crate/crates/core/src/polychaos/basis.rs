use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::family::PolynomialFamily;
use crate::error::{Error, Result};

/// Default upper bound on the number of indices a truncation may produce.
pub const DEFAULT_CARDINALITY_CAP: usize = 10_000;

/// Slack on the q-norm membership test `‖α‖_q ≤ p`.
const QNORM_SLACK: f64 = 1e-12;

/// Exponent vector of a multivariate polynomial, one entry per input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn q_norm(&self, q: f64) -> f64 {
        self.0
            .iter()
            .map(|&a| (a as f64).powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    }

    /// Number of inputs with a non-zero exponent.
    pub fn interaction_order(&self) -> usize {
        self.0.iter().filter(|&&a| a > 0).count()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// An ordered set of multi-indices together with the polynomial family used
/// along each input dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PceBasis {
    pub families: Vec<PolynomialFamily>,
    pub indices: Vec<MultiIndex>,
    pub max_degree: u32,
    pub q_norm: f64,
}

impl PceBasis {
    /// The single constant polynomial.
    pub fn constant(dim: usize, family: PolynomialFamily) -> Self {
        Self {
            families: vec![family; dim],
            indices: vec![MultiIndex::zero(dim)],
            max_degree: 0,
            q_norm: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.families.len()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position_of_constant(&self) -> Option<usize> {
        self.indices.iter().position(MultiIndex::is_zero)
    }

    /// Basis restricted to the given positions, kept in the original order.
    pub fn subset(&self, positions: &[usize]) -> Self {
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        positions.dedup();
        Self {
            families: self.families.clone(),
            indices: positions.iter().map(|&i| self.indices[i].clone()).collect(),
            max_degree: self.max_degree,
            q_norm: self.q_norm,
        }
    }

    fn max_exponent(&self) -> usize {
        self.indices
            .iter()
            .flat_map(|a| a.0.iter())
            .copied()
            .max()
            .unwrap_or(0) as usize
    }

    /// Row of basis evaluations `Ψ_α(z)` for a point already mapped into the
    /// families' domain.
    pub fn eval_row(&self, z: &[f64]) -> Result<Vec<f64>> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: z.len(),
            });
        }
        let width = self.max_exponent() + 1;
        let mut table = vec![0.0; width * z.len()];
        for (d, (&zd, fam)) in z.iter().zip(&self.families).enumerate() {
            fam.eval_all(zd, &mut table[d * width..(d + 1) * width]);
        }
        Ok(self
            .indices
            .iter()
            .map(|alpha| {
                alpha
                    .0
                    .iter()
                    .enumerate()
                    .map(|(d, &a)| table[d * width + a as usize])
                    .product()
            })
            .collect())
    }
}

/// Enumerates the hyperbolic truncation set `{α : ‖α‖_q ≤ p}` with the
/// default cardinality cap.
pub fn enumerate_basis(dim: usize, max_degree: u32, q_norm: f64) -> Result<PceBasis> {
    enumerate_basis_with_cap(
        dim,
        max_degree,
        q_norm,
        PolynomialFamily::LegendreUniform,
        DEFAULT_CARDINALITY_CAP,
    )
}

/// Enumerates `{α ∈ N^dim : ‖α‖_q ≤ p}` in graded order: ascending total
/// degree, then ascending lexicographic order within a degree.
pub fn enumerate_basis_with_cap(
    dim: usize,
    max_degree: u32,
    q_norm: f64,
    family: PolynomialFamily,
    cap: usize,
) -> Result<PceBasis> {
    if dim == 0 {
        return Err(Error::InvalidArgument("input dimension must be >= 1".into()));
    }
    if !(q_norm > 0.0 && q_norm <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "q-norm must lie in (0, 1], got {q_norm}"
        )));
    }
    let budget = (max_degree as f64).powf(q_norm) * (1.0 + QNORM_SLACK) + QNORM_SLACK;
    let mut indices = Vec::new();
    let mut current = vec![0u32; dim];
    for degree in 0..=max_degree {
        compositions(&mut current, 0, degree, 0.0, q_norm, budget, &mut indices, cap)?;
    }
    Ok(PceBasis {
        families: vec![family; dim],
        indices,
        max_degree,
        q_norm,
    })
}

#[allow(clippy::too_many_arguments)]
fn compositions(
    current: &mut [u32],
    pos: usize,
    remaining: u32,
    partial: f64,
    q: f64,
    budget: f64,
    out: &mut Vec<MultiIndex>,
    cap: usize,
) -> Result<()> {
    if pos + 1 == current.len() {
        let sum = partial + (remaining as f64).powf(q);
        if sum <= budget {
            current[pos] = remaining;
            out.push(MultiIndex(current.to_vec()));
            if out.len() > cap {
                return Err(Error::BasisTooLarge {
                    cardinality: out.len(),
                    cap,
                });
            }
        }
        return Ok(());
    }
    for a in 0..=remaining {
        let sum = partial + (a as f64).powf(q);
        if sum > budget {
            break;
        }
        current[pos] = a;
        compositions(current, pos + 1, remaining - a, sum, q, budget, out, cap)?;
    }
    current[pos] = 0;
    Ok(())
}

/// Information matrix `Ψ_ij = Ψ_{α_j}(z_i)` for points already mapped into
/// the families' domain.
pub fn information_matrix(basis: &PceBasis, points: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let mut psi = DMatrix::zeros(points.len(), basis.len());
    for (i, z) in points.iter().enumerate() {
        let row = basis.eval_row(z)?;
        for (j, v) in row.into_iter().enumerate() {
            psi[(i, j)] = v;
        }
    }
    Ok(psi)
}
