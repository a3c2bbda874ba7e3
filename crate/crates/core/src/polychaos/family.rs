use serde::{Deserialize, Serialize};

/// Univariate orthonormal polynomial family.
///
/// Legendre polynomials are orthonormal for the uniform probability measure
/// on `[-1, 1]`; Hermite polynomials (probabilists' convention) for the
/// standard normal measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolynomialFamily {
    LegendreUniform,
    HermiteGaussian,
}

impl PolynomialFamily {
    /// Value of the orthonormal polynomial of the given degree at `x`.
    pub fn eval(self, degree: usize, x: f64) -> f64 {
        let mut out = vec![0.0; degree + 1];
        self.eval_all(x, &mut out);
        out[degree]
    }

    /// Fills `out[n]` with the degree-`n` orthonormal polynomial at `x` for
    /// every `n < out.len()`, using the normalized three-term recurrence.
    pub fn eval_all(self, x: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        match self {
            PolynomialFamily::LegendreUniform => {
                // x ψ_n = b_{n+1} ψ_{n+1} + b_n ψ_{n-1},  b_n = n / sqrt(4n² − 1)
                out[1] = 3f64.sqrt() * x;
                for n in 1..out.len() - 1 {
                    let nf = n as f64;
                    let b_n = nf / (4.0 * nf * nf - 1.0).sqrt();
                    let m = nf + 1.0;
                    let b_next = m / (4.0 * m * m - 1.0).sqrt();
                    out[n + 1] = (x * out[n] - b_n * out[n - 1]) / b_next;
                }
            }
            PolynomialFamily::HermiteGaussian => {
                // x ψ_n = sqrt(n+1) ψ_{n+1} + sqrt(n) ψ_{n-1}
                out[1] = x;
                for n in 1..out.len() - 1 {
                    let nf = n as f64;
                    out[n + 1] = (x * out[n] - nf.sqrt() * out[n - 1]) / (nf + 1.0).sqrt();
                }
            }
        }
    }
}

/// Orthonormal polynomial value; see [`PolynomialFamily::eval`].
pub fn eval_univariate(family: PolynomialFamily, degree: usize, x: f64) -> f64 {
    family.eval(degree, x)
}

/// Per-dimension affine map `z = (x − shift) / scale` from the physical
/// domain to the family's natural domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputScaling {
    pub shift: Vec<f64>,
    pub scale: Vec<f64>,
}

impl InputScaling {
    pub fn identity(dim: usize) -> Self {
        Self {
            shift: vec![0.0; dim],
            scale: vec![1.0; dim],
        }
    }

    /// Maps each interval `[lo, hi]` onto `[-1, 1]`.
    pub fn to_unit_interval(bounds: &[(f64, f64)]) -> Self {
        Self {
            shift: bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect(),
            scale: bounds.iter().map(|(lo, hi)| 0.5 * (hi - lo)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.shift.iter().zip(&self.scale))
            .map(|(xi, (s, c))| (xi - s) / c)
            .collect()
    }
}
