use std::f64::consts::PI;

use num_complex::Complex64;

use super::check_finite_complex;
use super::faddeeva::{erfc_complex, faddeeva_upper};
use crate::error::{Error, Result};

/// Exponential integral of order one half, `E_{1/2}(z) = ∫₁^∞ e^{-zt} t^{-1/2} dt`,
/// continued to the cut plane as `√(π/z) erfc(√z)` with principal `√z`.
pub fn exp_integral_half(z: Complex64) -> Result<Complex64> {
    check(z)?;
    let root = z.sqrt();
    Ok((Complex64::new(PI, 0.0) / z).sqrt() * erfc_complex(root)?)
}

/// `exp(z) E_{1/2}(z)`, finite wherever `E_{1/2}` is defined.
///
/// `root` selects the sheet: it must satisfy `root² = z` and `Re root ≥ 0`
/// gives the principal branch. Passing the other square root continues
/// `E_{1/2}` analytically across the negative real axis, which is what the
/// closed-form matter amplitude needs when `m + Ω < 0`.
pub fn exp_integral_half_scaled(root: Complex64) -> Result<Complex64> {
    check_finite_complex("exp_integral_half_scaled", root)?;
    if root.re == 0.0 && root.im == 0.0 {
        return Err(Error::domain(
            "exp_integral_half_scaled",
            "E_1/2 diverges at z = 0",
        ));
    }
    // e^{z} √π/root · erfc(root) = √π/root · w(i root), when Re root ≥ 0.
    // For Re root < 0 use erfc(root) = 2 - erfc(-root).
    let i_root = Complex64::new(-root.im, root.re);
    let sqrt_pi = PI.sqrt();
    if root.re >= 0.0 {
        Ok(sqrt_pi / root * faddeeva_upper(i_root))
    } else {
        let z = root * root;
        if z.re > 709.0 {
            return Err(Error::overflow(
                "exp_integral_half_scaled",
                format!("exp({z}) on the continued sheet"),
            ));
        }
        Ok(sqrt_pi / root * (2.0 * z.exp() - faddeeva_upper(-i_root)))
    }
}

fn check(z: Complex64) -> Result<()> {
    check_finite_complex("exp_integral_half", z)?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain(
            "exp_integral_half",
            "E_1/2 diverges at z = 0",
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_a_domain_error() {
        assert!(exp_integral_half(Complex64::new(0.0, 0.0)).is_err());
        assert!(exp_integral_half_scaled(Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn scaled_form_matches_unscaled_on_principal_branch() {
        for &z in &[
            Complex64::new(1.0, 0.0),
            Complex64::new(3.0, -2.0),
            Complex64::new(-2.0, 5.0),
            Complex64::new(0.1, 0.1),
        ] {
            let a = exp_integral_half(z).unwrap() * z.exp();
            let b = exp_integral_half_scaled(z.sqrt()).unwrap();
            assert!((a - b).norm() < 1e-13 * a.norm(), "z = {z}");
        }
    }

    #[test]
    fn continued_sheet_is_analytic_across_the_cut() {
        // Approach z = -4 from above on the principal sheet; the continued
        // value from below must agree.
        let above = Complex64::new(-4.0, 1e-12);
        let principal = exp_integral_half_scaled(above.sqrt()).unwrap();
        let below = Complex64::new(-4.0, -1e-12);
        let continued = exp_integral_half_scaled(-below.sqrt()).unwrap();
        assert!((principal - continued).norm() < 1e-9 * principal.norm());
    }
}
