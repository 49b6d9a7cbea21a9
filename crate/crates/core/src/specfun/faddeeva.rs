//! Faddeeva function by the trapezoidal rule on its Cauchy integral.
//!
//! For `Im z > 0`, `w(z) = (i/π) ∫ exp(-t²)/(z - t) dt`. The trapezoidal sum
//! with step `h` has aliasing error of order `exp(-π²/h²)`; when the pole
//! `t = z` lies closer to the real axis than `π/h`, its residue contributes
//! a correction term `2 exp(-z²)/(1 ∓ exp(-2πiz/h))` (sign by grid offset).
//! The lower half-plane follows from `w(z) = 2 exp(-z²) - w(-z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::check_finite_complex;
use crate::error::{Error, Result};

const STEP: f64 = 0.5;
/// Nodes with |t| beyond this carry weight below exp(-49).
const NODE_RADIUS: f64 = 7.0;
/// ln(f64::MAX), with a little headroom.
const LN_MAX: f64 = 709.0;

/// Faddeeva function `w(z) = exp(-z²) erfc(-iz)` on the whole plane.
///
/// Fails with an overflow error in the lower half-plane when `exp(-z²)`
/// leaves the representable range.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    check_finite_complex("faddeeva", z)?;
    if z.im >= 0.0 {
        Ok(faddeeva_upper(z))
    } else {
        let e = exp_checked("faddeeva", -z * z)?;
        Ok(2.0 * e - faddeeva_upper(-z))
    }
}

/// Complex complementary error function.
pub fn erfc_complex(z: Complex64) -> Result<Complex64> {
    check_finite_complex("erfc_complex", z)?;
    if z.re >= 0.0 {
        erfc_right(z)
    } else {
        Ok(2.0 - erfc_right(-z)?)
    }
}

/// erfc(z) = exp(-z²) w(iz) for Re z ≥ 0, where iz is in the upper half-plane.
fn erfc_right(z: Complex64) -> Result<Complex64> {
    let w = faddeeva_upper(Complex64::new(-z.im, z.re));
    let exponent = -z * z;
    if w == Complex64::new(0.0, 0.0) {
        return Ok(w);
    }
    if exponent.re + w.norm().ln() > LN_MAX {
        return Err(Error::overflow(
            "erfc_complex",
            format!("|erfc({z})| exceeds f64 range"),
        ));
    }
    Ok(exponent.exp() * w)
}

fn exp_checked(func: &'static str, z: Complex64) -> Result<Complex64> {
    if z.re > LN_MAX {
        Err(Error::overflow(func, format!("exp({z})")))
    } else {
        Ok(z.exp())
    }
}

/// `w(z)` for `Im z ≥ 0`.
pub(crate) fn faddeeva_upper(z: Complex64) -> Complex64 {
    debug_assert!(z.im >= 0.0);
    // Use the grid whose nodes stay at least h/4 away from Re z, so the
    // sum and the residue correction never share a near-pole.
    let frac = (z.re / STEP) - (z.re / STEP).floor();
    let shifted = (frac - 0.5).abs() > 0.25;
    let offset = if shifted { 0.5 } else { 0.0 };

    let n_max = (NODE_RADIUS / STEP).ceil() as i64 + 1;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -n_max..=n_max {
        let t = (n as f64 + offset) * STEP;
        sum += (-t * t).exp() / (z - t);
    }
    let mut w = Complex64::new(0.0, STEP / PI) * sum;

    if z.im < PI / STEP {
        // Residue of the pole at t = z. exp(-z²) and exp(-2πiz/h) are
        // combined so that neither factor overflows on its own.
        let phase = Complex64::new(0.0, 2.0 * PI / STEP) * z; // 2πiz/h
        let damp = (phase - z * z).exp(); // exp(-z² + 2πiz/h)
        let e = phase.exp(); // exp(2πiz/h), |e| ≤ 1
        let correction = if shifted {
            2.0 * damp / (e + 1.0)
        } else {
            2.0 * damp / (e - 1.0)
        };
        w += correction;
    }
    if z.re == 0.0 {
        // w is real on the imaginary axis; drop the rounding residue.
        w.im = 0.0;
    }
    w
}
