//! Stochastic kriging with polynomial chaos trends.

pub mod error;
pub mod harness;
pub mod kriging;
pub mod lar;
pub mod linalg;
pub mod metrics;
pub mod optimize;
pub mod polychaos;
pub mod simulators;
pub mod sk;
pub mod trend;

pub use error::{Error, Result};
