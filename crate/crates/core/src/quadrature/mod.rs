//! Adaptive integration of complex-valued integrands.
//!
//! [`integrate_1d`] is a globally adaptive 7/15-point Gauss-Kronrod scheme.
//! Callers can declare integrable endpoint singularities (handled by a
//! quadratic change of variables on the end panels) and the dominant
//! oscillation frequency (the initial partition then resolves every period
//! with `oscillation_panels_per_period` panels). [`integrate_2d`] iterates
//! the 1D rule and can split the inner integral at the diagonal.
//! [`extrapolate_eps`] removes a positive regulator by Richardson
//! extrapolation.

mod adaptive;
mod extrapolate;
mod kronrod;

pub use adaptive::{integrate_1d, integrate_2d};
pub use extrapolate::{extrapolate_eps, Extrapolated};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and limits shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Budget of adaptive bisections on top of the initial partition.
    pub max_subdivisions: usize,
    pub oscillation_panels_per_period: usize,
    /// Largest regulator used by the vacuum double-integral oracle, in units of 1/m.
    pub eps_regulator: f64,
    /// Number of halvings of the regulator fed to the extrapolation.
    pub eps_extrapolation_levels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            oscillation_panels_per_period: 8,
            eps_regulator: 1e-6,
            eps_extrapolation_levels: 3,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.rel_tol) || !positive(self.abs_tol) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerances must be positive (rel_tol = {}, abs_tol = {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if self.oscillation_panels_per_period < 1 {
            return Err(Error::InvalidParameter(
                "oscillation_panels_per_period must be at least 1".into(),
            ));
        }
        if !positive(self.eps_regulator) {
            return Err(Error::InvalidParameter(format!(
                "eps_regulator must be positive, got {}",
                self.eps_regulator
            )));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    /// Tolerance target for a given value.
    pub fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

/// Integrable structure the caller knows about in advance.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IntegrandHints {
    /// Integrable singularity (log or inverse power below one) at `a`.
    pub singular_start: bool,
    /// Same, at `b`.
    pub singular_end: bool,
    /// Dominant angular frequency of the integrand.
    pub frequency: Option<f64>,
}

impl IntegrandHints {
    pub fn oscillating(frequency: f64) -> Self {
        Self {
            frequency: Some(frequency),
            ..Self::default()
        }
    }

    pub fn singular_start(mut self) -> Self {
        self.singular_start = true;
        self
    }

    pub fn singular_end(mut self) -> Self {
        self.singular_end = true;
        self
    }
}

/// Hints for [`integrate_2d`]; the outer variable is the first argument.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Hints2d {
    pub outer_frequency: Option<f64>,
    pub inner_frequency: Option<f64>,
    /// Integrable singularity along `x = y`.
    pub diagonal_singular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
    pub converged: bool,
}

impl IntegralResult {
    pub(crate) fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            subdivisions_used: 0,
            converged: true,
        }
    }

    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                value: self.value.norm(),
                error_estimate: self.error_estimate,
                subdivisions: self.subdivisions_used,
            })
        }
    }
}
