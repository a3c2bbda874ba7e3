//! Dense factorizations shared by the regression and kriging code.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};

/// Relative size of the first nugget added to a correlation or covariance
/// matrix, as a fraction of its mean diagonal.
pub const NUGGET_START: f64 = 1e-10;
/// Largest relative nugget tried before giving up.
pub const NUGGET_MAX: f64 = 1e-6;

/// A column is declared dependent when the part of it orthogonal to the
/// preceding columns is smaller than this fraction of its norm.
pub const RANK_TOL: f64 = 1e-10;

/// Cholesky factor of a symmetric positive-definite matrix, obtained after
/// adding the smallest nugget from the escalation ladder that succeeds.
#[derive(Debug, Clone)]
pub struct SpdFactor {
    lower: DMatrix<f64>,
    nugget: f64,
    log_det: f64,
}

impl SpdFactor {
    /// Factors `matrix + nugget * I` starting at `NUGGET_START * mean(diag)`
    /// and multiplying by ten up to `NUGGET_MAX * mean(diag)`.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || matrix.ncols() != n {
            return Err(Error::InvalidArgument(format!(
                "expected a non-empty square matrix, got {}x{}",
                n,
                matrix.ncols()
            )));
        }
        let scale = matrix.diagonal().mean();
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::NotPositiveDefinite { nugget: 0.0 });
        }
        let mut rel = NUGGET_START;
        loop {
            let nugget = rel * scale;
            let mut shifted = matrix.clone();
            for i in 0..n {
                shifted[(i, i)] += nugget;
            }
            if let Some(chol) = Cholesky::<f64, Dyn>::new(shifted) {
                let lower = chol.unpack();
                let log_det = 2.0 * lower.diagonal().iter().map(|d| d.ln()).sum::<f64>();
                if log_det.is_finite() {
                    return Ok(Self {
                        lower,
                        nugget,
                        log_det,
                    });
                }
            }
            if rel >= NUGGET_MAX * (1.0 - 1e-9) {
                return Err(Error::NotPositiveDefinite { nugget });
            }
            rel *= 10.0;
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.nrows()
    }

    pub fn nugget(&self) -> f64 {
        self.nugget
    }

    /// `log |A + nugget I|`.
    pub fn log_det(&self) -> f64 {
        self.log_det
    }

    pub fn lower(&self) -> &DMatrix<f64> {
        &self.lower
    }

    /// `L^{-1} b`.
    pub fn whiten_vec(&self, b: &DVector<f64>) -> DVector<f64> {
        self.lower
            .solve_lower_triangular(b)
            .expect("cholesky factor has a positive diagonal")
    }

    /// `L^{-1} B`.
    pub fn whiten(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        self.lower
            .solve_lower_triangular(b)
            .expect("cholesky factor has a positive diagonal")
    }

    /// `A^{-1} b`.
    pub fn solve_vec(&self, b: &DVector<f64>) -> DVector<f64> {
        let z = self.whiten_vec(b);
        self.lower
            .tr_solve_lower_triangular(&z)
            .expect("cholesky factor has a positive diagonal")
    }

    /// `A^{-1} B`.
    pub fn solve(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let z = self.whiten(b);
        self.lower
            .tr_solve_lower_triangular(&z)
            .expect("cholesky factor has a positive diagonal")
    }
}

/// Thin Householder QR that reports the columns which are numerically
/// dependent on the columns before them.
#[derive(Debug, Clone)]
pub struct ThinQr {
    pub q: DMatrix<f64>,
    pub r: DMatrix<f64>,
}

impl ThinQr {
    pub fn new(a: &DMatrix<f64>) -> std::result::Result<Self, Vec<usize>> {
        let (rows, cols) = a.shape();
        if rows < cols {
            return Err((rows..cols).collect());
        }
        let qr = a.clone().qr();
        let q = qr.q();
        let r = qr.r();
        let dependent: Vec<usize> = (0..cols)
            .filter(|&j| {
                let norm = a.column(j).norm();
                norm == 0.0 || r[(j, j)].abs() <= RANK_TOL * norm
            })
            .collect();
        if dependent.is_empty() {
            Ok(Self { q, r })
        } else {
            Err(dependent)
        }
    }

    /// Solves `R x = b`.
    pub fn solve_r(&self, b: &DVector<f64>) -> DVector<f64> {
        self.r
            .solve_upper_triangular(b)
            .expect("rank was checked at construction")
    }

    /// Solves `R^T x = b`.
    pub fn solve_rt(&self, b: &DVector<f64>) -> DVector<f64> {
        self.r
            .tr_solve_upper_triangular(b)
            .expect("rank was checked at construction")
    }

    /// Least-squares solution of `A x ≈ b`.
    pub fn least_squares(&self, b: &DVector<f64>) -> DVector<f64> {
        self.solve_r(&(self.q.transpose() * b))
    }
}

/// Generalized least squares for a trend matrix `F` under covariance `A`:
/// the whitened matrix `L^{-1} F` and its QR factorization.
#[derive(Debug, Clone)]
pub struct Gls {
    pub whitened_trend: DMatrix<f64>,
    pub qr: ThinQr,
}

impl Gls {
    pub fn new(factor: &SpdFactor, trend: &DMatrix<f64>) -> Result<Self> {
        let whitened_trend = factor.whiten(trend);
        let qr = ThinQr::new(&whitened_trend)
            .map_err(|cols| Error::IllPosedTrend { column: cols[0] })?;
        Ok(Self { whitened_trend, qr })
    }

    /// `β = (F^T A^{-1} F)^{-1} F^T A^{-1} y` given `L^{-1} y`.
    pub fn beta(&self, whitened_y: &DVector<f64>) -> DVector<f64> {
        self.qr.least_squares(whitened_y)
    }

    /// `γ^T (F^T A^{-1} F)^{-1} γ`.
    pub fn inflation(&self, gamma: &DVector<f64>) -> f64 {
        self.qr.solve_rt(gamma).norm_squared()
    }
}
