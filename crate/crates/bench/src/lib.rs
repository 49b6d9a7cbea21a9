//! Shared parameter sets for the criterion benchmarks.

use udw_core::{DetectorConfig, ParticleState};

/// A particle sitting on the detector, at rest.
pub fn centered_state() -> ParticleState {
    ParticleState::new(10.0, 0.0, 0.0).expect("valid state")
}

/// A displaced, moving particle; forces the quadrature path for `P_m`.
pub fn displaced_state() -> ParticleState {
    ParticleState::new(10.0, 1.0, 0.5).expect("valid state")
}

pub fn detector(omega: f64, delta_tau: f64) -> DetectorConfig {
    DetectorConfig::with_duration(omega, 1.0, 0.0, delta_tau).expect("valid detector")
}
