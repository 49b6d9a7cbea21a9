//! Field-state kernels on the detector worldline `x_D(τ) = (τ, 0)`.
//!
//! The matter Wightman function is the non-relativistic two-point function
//! of the single-particle state,
//!
//! ```text
//! W_m(τ, τ') = C A(τ) conj(A(τ')) + C A(τ') conj(A(τ)),
//! C    = exp(-k0²/σ²) / (2√π m σ),
//! A(τ) = exp(-imτ) exp[(k0/σ² - i x0)² / (2 d(τ))] / √d(τ),  d(τ) = 1/σ² + iτ/m,
//! ```
//!
//! and the vacuum one is `K0(m[ε + i(τ - τ')]) / 2π`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::bessel_k0_complex;

/// Ratio above which the non-relativistic description is flagged.
pub const NON_RELATIVISTIC_LIMIT: f64 = 0.1;

/// Gaussian one-particle state of the massive field at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleState {
    m: f64,
    sigma: f64,
    x0: f64,
    k0: f64,
}

impl ParticleState {
    /// State in σ units (`sigma = 1`).
    pub fn new(m: f64, x0: f64, k0: f64) -> Result<Self> {
        Self::with_sigma(m, 1.0, x0, k0)
    }

    pub fn with_sigma(m: f64, sigma: f64, x0: f64, k0: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mass m must be > 0, got {m}"
            )));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "wave-packet width sigma must be > 0, got {sigma}"
            )));
        }
        if !(x0.is_finite() && k0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "x0 and k0 must be finite, got x0 = {x0}, k0 = {k0}"
            )));
        }
        Ok(Self { m, sigma, x0, k0 })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// Same state moved to a new position and momentum.
    pub fn displaced(&self, x0: f64, k0: f64) -> Result<Self> {
        Self::with_sigma(self.m, self.sigma, x0, k0)
    }

    /// Particle centred on the detector and at rest.
    pub fn is_centered(&self) -> bool {
        self.x0 == 0.0 && self.k0 == 0.0
    }

    /// `σ/m ≤ 0.1` and `|k0|/m ≤ 0.1`; violations are warnings only.
    pub fn is_non_relativistic(&self) -> bool {
        self.sigma / self.m <= NON_RELATIVISTIC_LIMIT
            && self.k0.abs() / self.m <= NON_RELATIVISTIC_LIMIT
    }

    /// Human-readable descriptions of violated validity conditions.
    pub fn validity_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.sigma / self.m > NON_RELATIVISTIC_LIMIT {
            out.push(format!(
                "sigma/m = {:.3} exceeds {NON_RELATIVISTIC_LIMIT}",
                self.sigma / self.m
            ));
        }
        if self.k0.abs() / self.m > NON_RELATIVISTIC_LIMIT {
            out.push(format!(
                "|k0|/m = {:.3} exceeds {NON_RELATIVISTIC_LIMIT}",
                self.k0.abs() / self.m
            ));
        }
        out
    }

    /// Spreading factor `σ² t / m`.
    fn spread(&self, t: f64) -> f64 {
        self.sigma * self.sigma * t / self.m
    }

    /// `d(τ) = 1/σ² + iτ/m`.
    fn width_term(&self, tau: f64) -> Complex64 {
        Complex64::new(1.0 / (self.sigma * self.sigma), tau / self.m)
    }

    /// `k0/σ² - i x0`.
    fn source(&self) -> Complex64 {
        Complex64::new(self.k0 / (self.sigma * self.sigma), -self.x0)
    }
}

/// A proper-time instant on the inertial worldline at the spatial origin.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WorldlinePoint {
    pub tau: f64,
}

impl WorldlinePoint {
    pub fn new(tau: f64) -> Result<Self> {
        if tau.is_finite() {
            Ok(Self { tau })
        } else {
            Err(Error::InvalidParameter(format!(
                "proper time must be finite, got {tau}"
            )))
        }
    }

    /// Minkowski coordinates `(t, x)` of the point.
    pub fn event(&self) -> (f64, f64) {
        (self.tau, 0.0)
    }
}

/// `⟨ψ(0)|φ(t, x)²|ψ(0)⟩` with the vacuum term dropped.
pub fn phi_squared_matter(state: &ParticleState, t: f64, x: f64) -> f64 {
    let s = state.spread(t);
    let spread2 = 1.0 + s * s;
    let sigma2 = state.sigma * state.sigma;
    let offset = x - state.x0 - state.k0 * t / state.m;
    (sigma2 / (PI * spread2)).sqrt() * (-sigma2 * offset * offset / spread2).exp() / state.m
}

/// Free Schrödinger evolution of the Gaussian packet.
pub fn qm_wavefunction(state: &ParticleState, t: f64, x: f64) -> Complex64 {
    let ParticleState { m, sigma, x0, k0 } = *state;
    let denom = Complex64::new(1.0, state.spread(t));
    let amplitude = (sigma / PI.sqrt()).sqrt() / denom.sqrt();
    let offset = x - x0 - k0 * t / m;
    let exponent = -0.5 * sigma * sigma * offset * offset / denom
        + Complex64::new(0.0, k0 * (x - x0) - k0 * k0 * t / (2.0 * m));
    amplitude * exponent.exp()
}

/// `|Ψ(x, t)|²` in closed form.
pub fn qm_density(state: &ParticleState, t: f64, x: f64) -> f64 {
    let ParticleState { m, sigma, x0, k0 } = *state;
    let s = sigma * sigma * t / m;
    let var = 1.0 + s * s;
    let offset = x - x0 - k0 * t / m;
    (sigma * sigma / (PI * var)).sqrt() * (-(sigma * sigma) * offset * offset / var).exp()
}

/// Vacuum Wightman function with regulator `eps > 0` (time units).
pub fn wightman_vacuum(m: f64, tau: f64, tau_p: f64, eps: f64) -> Result<Complex64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "vacuum regulator eps must be > 0, got {eps}"
        )));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mass m must be > 0, got {m}"
        )));
    }
    let z = Complex64::new(m * eps, m * (tau - tau_p));
    Ok(bessel_k0_complex(z)? / TAU)
}

/// Real positive constant `C = exp(-k0²/σ²) / (2√π m σ)` of the separable form.
pub fn matter_prefactor(state: &ParticleState) -> f64 {
    let k = state.k0 / state.sigma;
    (-k * k).exp() / (2.0 * PI.sqrt() * state.m * state.sigma)
}

/// `A(τ)`, so that the first term of `W_m(τ, τ')` is `C A(τ) conj(A(τ'))`.
pub fn matter_amplitude_factor(state: &ParticleState, tau: f64) -> Complex64 {
    let d = state.width_term(tau);
    let src = state.source();
    let phase = Complex64::new(0.0, -state.m * tau);
    (phase + src * src / (2.0 * d)).exp() / d.sqrt()
}

/// Matter part of the two-point function pulled back to the worldline,
/// evaluated term by term from its closed form.
pub fn wightman_matter(state: &ParticleState, tau: f64, tau_p: f64) -> Complex64 {
    matter_term(state, tau, tau_p) + matter_term(state, tau_p, tau)
}

fn matter_term(state: &ParticleState, tau: f64, tau_p: f64) -> Complex64 {
    let ParticleState { m, sigma, k0, .. } = *state;
    let norm = 1.0 / (2.0 * PI.sqrt() * m * sigma);
    let d = state.width_term(tau);
    let d_p = state.width_term(tau_p).conj();
    let src = state.source();
    let exponent = Complex64::new(-(k0 * k0) / (sigma * sigma), -m * (tau - tau_p))
        + src * src / (2.0 * d)
        + src.conj() * src.conj() / (2.0 * d_p);
    norm * exponent.exp() / (d * d_p).sqrt()
}
