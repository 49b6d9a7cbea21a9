//! Special functions used by the detector-response formulas.
//!
//! Real-argument Bessel functions `J0` and `Y0`, the complex modified Bessel
//! function `K0`, the Faddeeva function `w(z) = exp(-z²) erfc(-iz)` with the
//! complex complementary error function built on it, and the exponential
//! integral `E_{1/2}`. All functions are pure and allocation free.

mod bessel;
mod expint;
mod faddeeva;

pub use bessel::{bessel_j0, bessel_k0_complex, bessel_y0};
pub use expint::{exp_integral_half, exp_integral_half_scaled};
pub use faddeeva::{erfc_complex, faddeeva};

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub(crate) fn check_finite_real(func: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("non-finite argument {x}")))
    }
}

pub(crate) fn check_finite_complex(func: &'static str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("non-finite argument {z}")))
    }
}
