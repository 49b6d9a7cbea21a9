use num_complex::Complex64;

use super::{DetectorConfig, Estimate};
use crate::error::{Error, Result};
use crate::kernels::wightman_vacuum;
use crate::quadrature::{
    extrapolate_eps, integrate_1d, integrate_2d, Hints2d, IntegrandHints, QuadratureSpec,
};
use crate::specfun::{bessel_j0, bessel_y0};

/// Vacuum excitation probability from the single-integral representation
///
/// ```text
/// P_v = -(λ²/2m²) ∫₀^{mΔτ} du (mΔτ - u) [J0(u) sin(μu) + Y0(u) cos(μu)],  μ = Ω/m.
/// ```
///
/// Depends on the window only through its duration.
pub fn p_vacuum(m: f64, det: &DetectorConfig, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mass m must be > 0, got {m}"
        )));
    }
    let span = m * det.duration();
    if span == 0.0 || det.lambda() == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let mu = det.omega() / m;
    let integrand = |u: f64| {
        if u <= 0.0 {
            // Only reachable through underflow of the end-panel map, where
            // the Jacobian already vanishes.
            return Complex64::new(0.0, 0.0);
        }
        let (s, c) = (mu * u).sin_cos();
        let j0 = bessel_j0(u).unwrap_or(f64::NAN);
        let y0 = bessel_y0(u).unwrap_or(f64::NAN);
        Complex64::new((span - u) * (j0 * s + y0 * c), 0.0)
    };
    let hints = IntegrandHints::oscillating(1.0 + mu.abs()).singular_start();
    let r = integrate_1d(integrand, 0.0, span, spec, hints)?.require_converged()?;
    let scale = -det.lambda() * det.lambda() / (2.0 * m * m);
    Ok(Estimate {
        value: r.value.re,
        error_estimate: r.error_estimate,
    }
    .scaled(scale))
}

/// Brute-force vacuum probability: the double integral of the regulated
/// vacuum Wightman function over the switching window, extrapolated to a
/// vanishing regulator.
pub fn p_vacuum_oracle(m: f64, det: &DetectorConfig, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mass m must be > 0, got {m}"
        )));
    }
    if det.duration() == 0.0 || det.lambda() == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let omega = det.omega();
    let window = (det.tau_i(), det.tau_f());
    let hints = Hints2d {
        outer_frequency: Some(m + omega.abs()),
        inner_frequency: Some(m + omega.abs()),
        diagonal_singular: true,
    };
    let lambda2 = det.lambda() * det.lambda();
    let sample = |eps_m: f64| -> Result<Complex64> {
        let eps = eps_m / m;
        let f = |tau: f64, tau_p: f64| {
            let phase = Complex64::new(0.0, -omega * (tau - tau_p)).exp();
            phase * wightman_vacuum(m, tau, tau_p, eps).unwrap_or(Complex64::new(f64::NAN, 0.0))
        };
        let r = integrate_2d(f, window, window, spec, hints)?.require_converged()?;
        Ok(r.value * lambda2)
    };
    let x = extrapolate_eps(sample, spec)?;
    Ok(Estimate {
        value: x.value.re,
        error_estimate: x.error_estimate + x.value.im.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn empty_window_gives_zero() {
        let det = DetectorConfig::with_duration(5.0, 1.0, 3.0, 0.0).unwrap();
        assert_eq!(p_vacuum(10.0, &det, &spec()).unwrap().value, 0.0);
        assert_eq!(p_vacuum_oracle(10.0, &det, &spec()).unwrap().value, 0.0);
    }

    #[test]
    fn independent_of_switch_on_time() {
        let a = DetectorConfig::with_duration(5.0, 1.0, 0.0, 3.0).unwrap();
        let b = DetectorConfig::with_duration(5.0, 1.0, 7.5, 3.0).unwrap();
        let pa = p_vacuum(10.0, &a, &spec()).unwrap().value;
        let pb = p_vacuum(10.0, &b, &spec()).unwrap().value;
        assert!((pa - pb).abs() <= 1e-12 * pa.abs());
    }

    #[test]
    fn positive_and_scales_with_coupling_squared() {
        let a = DetectorConfig::with_duration(5.0, 1.0, 0.0, 3.0).unwrap();
        let b = DetectorConfig::with_duration(5.0, 0.5, 0.0, 3.0).unwrap();
        let pa = p_vacuum(10.0, &a, &spec()).unwrap().value;
        let pb = p_vacuum(10.0, &b, &spec()).unwrap().value;
        assert!(pa > 0.0);
        assert!((pb - 0.25 * pa).abs() < 1e-15);
    }

    #[test]
    fn de_excitation_exceeds_excitation_at_the_mass_gap() {
        let up = DetectorConfig::with_duration(10.0, 1.0, 0.0, 4.0).unwrap();
        let down = DetectorConfig::with_duration(-10.0, 1.0, 0.0, 4.0).unwrap();
        let p_up = p_vacuum(10.0, &up, &spec()).unwrap().value;
        let p_down = p_vacuum(10.0, &down, &spec()).unwrap().value;
        assert!(p_down > p_up);
    }
}
