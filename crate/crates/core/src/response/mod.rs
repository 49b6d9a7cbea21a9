//! Transition probabilities for a sharply switched detector.
//!
//! `P_p = P_v + P_m` to leading order in the coupling. `P_m` has three
//! routes: the separable one-dimensional reduction (production), the
//! closed form for a particle centred on the detector at rest (with a
//! separate closed form at exact resonance `|Ω| = m`), and the brute-force
//! double integral kept as an oracle.

mod density;
mod matter;
mod vacuum;

pub use density::{normalized_ratio_at, p_avg, ratio_normalized};
pub use matter::{
    analytic_path_verified, calibration_discrepancy, p_matter, p_matter_analytic,
    p_matter_analytic_with, p_matter_quad, p_matter_quad2d, p_matter_resonance,
    p_matter_resonance_with, AnalyticConstants, MatterPath, MatterResponse, CALIBRATION_TOLERANCE,
    RESONANCE_WINDOW,
};
pub use vacuum::{p_vacuum, p_vacuum_oracle};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::ParticleState;
use crate::quadrature::QuadratureSpec;

/// `P_p` above this marks the first-order result as unreliable.
pub const PERTURBATIVITY_LIMIT: f64 = 0.1;

/// Energy gap, coupling and switching window of the detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    omega: f64,
    lambda: f64,
    tau_i: f64,
    tau_f: f64,
}

impl DetectorConfig {
    pub fn new(omega: f64, lambda: f64, tau_i: f64, tau_f: f64) -> Result<Self> {
        for (name, v) in [
            ("omega", omega),
            ("lambda", lambda),
            ("tau_i", tau_i),
            ("tau_f", tau_f),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        if tau_i < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "switch-on time must satisfy tau_i >= 0, got tau_i = {tau_i}"
            )));
        }
        if tau_f < tau_i {
            return Err(Error::InvalidParameter(format!(
                "switching window must satisfy tau_f >= tau_i, got tau_i = {tau_i}, tau_f = {tau_f}"
            )));
        }
        Ok(Self {
            omega,
            lambda,
            tau_i,
            tau_f,
        })
    }

    /// Window given by its start and duration `Δτ = tau_f - tau_i ≥ 0`.
    pub fn with_duration(omega: f64, lambda: f64, tau_i: f64, delta_tau: f64) -> Result<Self> {
        if delta_tau < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "interaction duration must satisfy delta_tau = tau_f - tau_i >= 0, got {delta_tau}"
            )));
        }
        Self::new(omega, lambda, tau_i, tau_i + delta_tau)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn tau_i(&self) -> f64 {
        self.tau_i
    }

    pub fn tau_f(&self) -> f64 {
        self.tau_f
    }

    pub fn duration(&self) -> f64 {
        self.tau_f - self.tau_i
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(omega, self.lambda, self.tau_i, self.tau_f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Quad1d,
    Quad2d,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Quad1d => "quad1d",
            Method::Quad2d => "quad2d",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A real quantity with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseResult {
    pub p_v: f64,
    pub p_m: f64,
    pub p_p: f64,
    /// Route used for `P_m`.
    pub method: Method,
    pub error_estimate: f64,
    pub resonance_flag: bool,
    pub perturbativity_flag: bool,
}

/// Total excitation probability with the default `P_m` routing.
pub fn p_total(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<ResponseResult> {
    p_total_with(state, det, spec, MatterPath::Auto)
}

pub fn p_total_with(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
    path: MatterPath,
) -> Result<ResponseResult> {
    let vacuum = p_vacuum(state.m(), det, spec)?;
    let matter = matter::p_matter_via(state, det, spec, path)?;
    let p_v = vacuum.value;
    let p_m = matter.estimate.value;
    let p_p = p_v + p_m;
    Ok(ResponseResult {
        p_v,
        p_m,
        p_p,
        method: matter.method,
        error_estimate: vacuum.error_estimate + matter.estimate.error_estimate,
        resonance_flag: matter.resonance,
        perturbativity_flag: p_p > PERTURBATIVITY_LIMIT,
    })
}
