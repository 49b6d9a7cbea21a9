use super::matter::p_matter;
use super::{DetectorConfig, Estimate};
use crate::error::{Error, Result};
use crate::kernels::{phi_squared_matter, ParticleState};
use crate::quadrature::{integrate_1d, IntegrandHints, QuadratureSpec};

use num_complex::Complex64;

/// `(m/Δτ) ∫ ⟨φ²(τ, 0)⟩_m dτ`, the field intensity seen by the detector
/// averaged over the window; `m ⟨φ²(τ_i, 0)⟩_m` when `Δτ = 0`.
pub fn p_avg(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let m = state.m();
    let dt = det.duration();
    if dt == 0.0 {
        return Ok(Estimate::exact(
            m * phi_squared_matter(state, det.tau_i(), 0.0),
        ));
    }
    let f = |tau: f64| Complex64::new(phi_squared_matter(state, tau, 0.0), 0.0);
    let r = integrate_1d(f, det.tau_i(), det.tau_f(), spec, IntegrandHints::default())?
        .require_converged()?;
    Ok(Estimate {
        value: r.value.re,
        error_estimate: r.error_estimate,
    }
    .scaled(m / dt))
}

/// `P_avg / P_m` for one state, before normalisation.
fn raw_ratio(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let pm = p_matter(state, det, spec)?.estimate;
    if !(pm.value.is_normal() && pm.value > 0.0) {
        return Err(Error::Underflow(format!(
            "P_m = {:e} at x0 = {}, k0 = {}; ratio undefined",
            pm.value,
            state.x0(),
            state.k0()
        )));
    }
    let avg = p_avg(state, det, spec)?;
    Ok(quotient(avg, pm))
}

/// `a / b` with first-order relative error propagation.
fn quotient(a: Estimate, b: Estimate) -> Estimate {
    let value = a.value / b.value;
    let rel = relative(a) + relative(b);
    Estimate {
        value,
        error_estimate: value.abs() * rel,
    }
}

fn relative(e: Estimate) -> f64 {
    if e.value == 0.0 {
        0.0
    } else {
        e.error_estimate / e.value.abs()
    }
}

/// `(P_avg / P_m)` of each state divided by its value for the centred
/// state at rest, which must be part of the grid.
pub fn ratio_normalized(
    states: &[ParticleState],
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<Vec<Estimate>> {
    let reference = states.iter().find(|s| s.is_centered()).ok_or_else(|| {
        Error::InvalidParameter("normalized ratio needs x0 = 0, k0 = 0 in the grid".into())
    })?;
    let base = raw_ratio(reference, det, spec)?;
    states
        .iter()
        .map(|s| {
            if s.m() != reference.m() || s.sigma() != reference.sigma() {
                return Err(Error::InvalidParameter(
                    "normalized ratio needs a common mass and width across the grid".into(),
                ));
            }
            Ok(quotient(raw_ratio(s, det, spec)?, base))
        })
        .collect()
}

/// Normalised ratio of a single state against its centred counterpart.
pub fn normalized_ratio_at(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let reference = state.displaced(0.0, 0.0)?;
    Ok(quotient(
        raw_ratio(state, det, spec)?,
        raw_ratio(&reference, det, spec)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det() -> DetectorConfig {
        DetectorConfig::with_duration(10.0, 1.0, 0.0, 4.0).unwrap()
    }

    #[test]
    fn degenerate_window_is_pointwise_intensity() {
        let s = ParticleState::new(10.0, 0.5, 0.0).unwrap();
        let d = DetectorConfig::with_duration(1.0, 1.0, 2.0, 0.0).unwrap();
        let v = p_avg(&s, &d, &QuadratureSpec::default()).unwrap().value;
        assert_eq!(v, 10.0 * phi_squared_matter(&s, 2.0, 0.0));
    }

    #[test]
    fn reference_ratio_is_exactly_one() {
        let spec = QuadratureSpec::default();
        let states: Vec<_> = [(1.0, 0.0), (0.0, 0.0), (2.0, 0.5)]
            .iter()
            .map(|&(x, k)| ParticleState::new(10.0, x, k).unwrap())
            .collect();
        let r = ratio_normalized(&states, &det(), &spec).unwrap();
        assert_eq!(r[1].value, 1.0);
        let c = ParticleState::new(10.0, 0.0, 0.0).unwrap();
        assert_eq!(normalized_ratio_at(&c, &det(), &spec).unwrap().value, 1.0);
    }

    #[test]
    fn missing_reference_is_rejected() {
        let states = [ParticleState::new(10.0, 1.0, 0.0).unwrap()];
        assert!(matches!(
            ratio_normalized(&states, &det(), &QuadratureSpec::default()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn vanishing_response_reports_underflow() {
        let far = ParticleState::new(10.0, 60.0, 0.0).unwrap();
        assert!(matches!(
            normalized_ratio_at(&far, &det(), &QuadratureSpec::default()),
            Err(Error::Underflow(_))
        ));
    }
}
