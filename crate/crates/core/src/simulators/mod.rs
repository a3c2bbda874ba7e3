//! Stochastic test simulators with analytic means, plus design generation
//! and replication allocation.

mod design;
mod mm1;
mod testbeds;

pub use design::{allocate_replications, allocate_replications_with_floor, equispaced, lhs_design, lhs_design_with_rng};
pub use mm1::{mm1_simulate, mm1_true, synthetic_known_noise, WARM_UP_FRACTION};
pub use testbeds::{
    eggbox, eggbox_mean, eggbox_variance, ishigami, ishigami_mean, ishigami_variance, NoiseReading, EGGBOX_DOMAIN,
    ISHIGAMI_DOMAIN,
};

/// Domain of the M/M/1 arrival rate used for designs.
pub const MM1_DOMAIN: [(f64, f64); 1] = [(0.3, 0.9)];
