//! Leading-order excitation probability of an inertial Unruh-DeWitt detector
//! coupled to a massive scalar field in 1+1 dimensions, with the field
//! prepared in a non-relativistic single-particle Gaussian state.
//!
//! The probability splits into a vacuum part `P_v` and a matter part `P_m`.
//! Everything is expressed in units of the wave-packet momentum width σ:
//! masses, gaps and momenta in σ, times and positions in 1/σ.
//!
//! Module map:
//!
//! * [`specfun`]: Bessel J0/Y0/K0, complex erfc through the Faddeeva function
//!   and the exponential integral of order one half.
//! * [`kernels`]: the particle state, Wightman functions on the detector
//!   worldline, the matter density and the reference Schrödinger packet.
//! * [`quadrature`]: adaptive Gauss-Kronrod integration (1D and iterated 2D)
//!   and Richardson extrapolation of the regulator.
//! * [`response`]: `P_v`, `P_m` (separable quadrature, closed form,
//!   resonance), `P_p`, the averaged density and the normalized ratio.
//! * [`experiments`]: parameter sweeps, figure datasets, CSV output and the
//!   validation report.

pub mod error;
pub mod experiments;
pub mod kernels;
pub mod quadrature;
pub mod response;
pub mod specfun;

pub use error::{Error, ErrorCategory, Result};
pub use kernels::{ParticleState, WorldlinePoint};
pub use num_complex::Complex64;
pub use quadrature::{IntegralResult, IntegrandHints, QuadratureSpec};
pub use response::{DetectorConfig, Estimate, Method, ResponseResult};

/// Version string written into dataset headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
