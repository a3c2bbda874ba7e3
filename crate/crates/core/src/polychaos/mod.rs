//! Orthonormal polynomial bases, hyperbolic truncation, and least-squares
//! polynomial chaos expansions with closed-form leave-one-out error.

mod basis;
mod family;
mod regression;

pub use basis::{
    enumerate_basis, enumerate_basis_with_cap, information_matrix, MultiIndex, PceBasis,
    DEFAULT_CARDINALITY_CAP,
};
pub use family::{eval_univariate, InputScaling, PolynomialFamily};
pub use regression::{fit_ols, fit_ols_scaled, loo_error, PceModel, LEVERAGE_TOL};

pub(crate) use regression::least_squares_with_loo;
