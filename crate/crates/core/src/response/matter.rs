use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DetectorConfig, Estimate, Method};
use crate::error::{Error, Result};
use crate::kernels::{matter_amplitude_factor, matter_prefactor, wightman_matter, ParticleState};
use crate::quadrature::{integrate_1d, integrate_2d, Hints2d, IntegrandHints, QuadratureSpec};
use crate::specfun::exp_integral_half_scaled;

/// Closed forms are refused when `min|m ∓ Ω|·Δτ` falls below this.
pub const RESONANCE_WINDOW: f64 = 1e-3;

/// Numerical constants of the centred closed forms.
///
/// `P_m ∝ |e^{κb} √u E_{1/2}(bu)|²` between the window endpoints, with
/// `b = m(m ± Ω)/σ²`, and at `|Ω| = m` the resonant term is
/// `c·|√u_f - √u_i|²`. Only `κ = 1`, `c = 4` agree with direct quadrature;
/// [`AnalyticConstants::UNCALIBRATED`] keeps the other pair around so the
/// validation suite can show that it is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticConstants {
    pub prefactor_exponent_scale: f64,
    pub resonance_coefficient: f64,
}

impl AnalyticConstants {
    pub const CALIBRATED: Self = Self {
        prefactor_exponent_scale: 1.0,
        resonance_coefficient: 4.0,
    };

    pub const UNCALIBRATED: Self = Self {
        prefactor_exponent_scale: 2.0,
        resonance_coefficient: 1.0,
    };
}

impl Default for AnalyticConstants {
    fn default() -> Self {
        Self::CALIBRATED
    }
}

/// How [`p_matter`] evaluates `P_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatterPath {
    /// Closed form when the particle is centred (exact resonance or away
    /// from the resonance window) and the closed forms have passed their
    /// calibration check; the one-dimensional reduction otherwise.
    #[default]
    Auto,
    Analytic,
    Quadrature,
    DoubleIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatterResponse {
    pub estimate: Estimate,
    pub method: Method,
    /// `|Ω| = m` exactly or within the resonance window.
    pub resonance: bool,
}

/// Largest closed-form vs quadrature discrepancy tolerated by
/// [`analytic_path_verified`].
pub const CALIBRATION_TOLERANCE: f64 = 1e-6;

/// Whether the calibrated closed forms reproduce the quadrature oracle.
/// Checked once per process; [`MatterPath::Auto`] only takes the closed
/// forms when this holds.
pub fn analytic_path_verified() -> bool {
    static VERIFIED: OnceLock<bool> = OnceLock::new();
    *VERIFIED.get_or_init(|| {
        calibration_discrepancy(&AnalyticConstants::CALIBRATED)
            .is_ok_and(|d| d <= CALIBRATION_TOLERANCE)
    })
}

/// Largest relative deviation of the closed forms from quadrature over a
/// small set of centred configurations on both sides of the mass shell
/// and at resonance.
pub fn calibration_discrepancy(constants: &AnalyticConstants) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let state = ParticleState::new(10.0, 0.0, 0.0)?;
    let mut worst: f64 = 0.0;
    for (omega, tau_i, dt) in [
        (0.0, 0.0, 2.0),
        (5.0, 2.0, 0.5),
        (-20.0, 0.0, 8.0),
        (10.0, 1.0, 4.0),
    ] {
        let det = DetectorConfig::with_duration(omega, 1.0, tau_i, dt)?;
        let closed = if is_exact_resonance(&state, &det) {
            p_matter_resonance_with(&state, &det, constants)?
        } else {
            p_matter_analytic_with(&state, &det, constants)?
        };
        let quad = p_matter_quad(&state, &det, &spec)?;
        worst = worst.max((closed.value - quad.value).abs() / quad.value);
    }
    Ok(worst)
}

/// `P_m` with the default routing.
pub fn p_matter(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<MatterResponse> {
    p_matter_via(state, det, spec, MatterPath::Auto)
}

pub(super) fn p_matter_via(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
    path: MatterPath,
) -> Result<MatterResponse> {
    let exact = is_exact_resonance(state, det);
    // An empty window has no detuning scale, so only an exact match counts there.
    let resonance =
        exact || (det.duration() > 0.0 && detuning(state, det) * det.duration() < RESONANCE_WINDOW);
    let closed_form = state.is_centered() && analytic_path_verified();
    let (estimate, method) = match path {
        MatterPath::Auto if closed_form && exact => {
            (p_matter_resonance(state, det)?, Method::Analytic)
        }
        MatterPath::Auto if closed_form && !resonance => {
            (p_matter_analytic(state, det)?, Method::Analytic)
        }
        MatterPath::Auto | MatterPath::Quadrature => {
            (p_matter_quad(state, det, spec)?, Method::Quad1d)
        }
        MatterPath::Analytic if exact => (p_matter_resonance(state, det)?, Method::Analytic),
        MatterPath::Analytic => (p_matter_analytic(state, det)?, Method::Analytic),
        MatterPath::DoubleIntegral => (p_matter_quad2d(state, det, spec)?, Method::Quad2d),
    };
    Ok(MatterResponse {
        estimate,
        method,
        resonance,
    })
}

fn is_exact_resonance(state: &ParticleState, det: &DetectorConfig) -> bool {
    det.omega().abs() == state.m()
}

/// `min |m ∓ Ω|`.
fn detuning(state: &ParticleState, det: &DetectorConfig) -> f64 {
    let m = state.m();
    (m - det.omega()).abs().min((m + det.omega()).abs())
}

/// `∫ e^{-igτ} A(τ) dτ` over the window.
fn amplitude_integral(
    state: &ParticleState,
    det: &DetectorConfig,
    gap: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let freq = (state.m() + gap).abs();
    let hints = if freq > 0.0 {
        IntegrandHints::oscillating(freq)
    } else {
        IntegrandHints::default()
    };
    let f = |tau: f64| Complex64::new(0.0, -gap * tau).exp() * matter_amplitude_factor(state, tau);
    let r = integrate_1d(f, det.tau_i(), det.tau_f(), spec, hints)?.require_converged()?;
    Ok((r.value, r.error_estimate))
}

/// `P_m` from the separable one-dimensional reduction,
/// `λ² C (|F(Ω)|² + |F(-Ω)|²)` with `F(g) = ∫ e^{-igτ} A(τ) dτ`.
///
/// Works for any position and momentum of the packet.
pub fn p_matter_quad(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if det.duration() == 0.0 || det.lambda() == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let (fp, ep) = amplitude_integral(state, det, det.omega(), spec)?;
    let (fm, em) = amplitude_integral(state, det, -det.omega(), spec)?;
    let scale = det.lambda() * det.lambda() * matter_prefactor(state);
    let value = scale * (fp.norm_sqr() + fm.norm_sqr());
    let error = scale * (2.0 * fp.norm() * ep + ep * ep + 2.0 * fm.norm() * em + em * em);
    Ok(Estimate {
        value,
        error_estimate: error,
    })
}

/// `P_m` as the full double integral of `e^{-iΩ(τ-τ')} W_m(τ, τ')`.
/// Slow; kept as an independent check on the reduction.
pub fn p_matter_quad2d(
    state: &ParticleState,
    det: &DetectorConfig,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if det.duration() == 0.0 || det.lambda() == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let omega = det.omega();
    let freq = state.m() + omega.abs();
    let hints = Hints2d {
        outer_frequency: Some(freq),
        inner_frequency: Some(freq),
        diagonal_singular: false,
    };
    let f = |tau: f64, tau_p: f64| {
        Complex64::new(0.0, -omega * (tau - tau_p)).exp() * wightman_matter(state, tau, tau_p)
    };
    let window = (det.tau_i(), det.tau_f());
    let r = integrate_2d(f, window, window, spec, hints)?.require_converged()?;
    let lambda2 = det.lambda() * det.lambda();
    Ok(Estimate {
        value: lambda2 * r.value.re,
        error_estimate: lambda2 * (r.error_estimate + r.value.im.abs()),
    })
}

/// Closed-form `P_m` for a particle centred on the detector at rest.
pub fn p_matter_analytic(state: &ParticleState, det: &DetectorConfig) -> Result<Estimate> {
    p_matter_analytic_with(state, det, &AnalyticConstants::CALIBRATED)
}

pub fn p_matter_analytic_with(
    state: &ParticleState,
    det: &DetectorConfig,
    constants: &AnalyticConstants,
) -> Result<Estimate> {
    require_centered(state)?;
    if det.duration() == 0.0 || det.lambda() == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let d = detuning(state, det);
    if d * det.duration() < RESONANCE_WINDOW {
        return Err(Error::NearResonance {
            detuning: d * det.duration(),
        });
    }
    let mut total = 0.0;
    let mut roundoff = 0.0;
    for gap in [det.omega(), -det.omega()] {
        let (diff, size) = antiderivative_difference(state, det, gap, constants)?;
        total += diff.norm_sqr();
        roundoff += 2.0 * diff.norm() * size * 64.0 * f64::EPSILON;
    }
    let scale = analytic_scale(state, det);
    Ok(Estimate {
        value: scale * total,
        error_estimate: scale * roundoff,
    })
}

/// Closed-form `P_m` at exact resonance `|Ω| = m`.
pub fn p_matter_resonance(state: &ParticleState, det: &DetectorConfig) -> Result<Estimate> {
    p_matter_resonance_with(state, det, &AnalyticConstants::CALIBRATED)
}

pub fn p_matter_resonance_with(
    state: &ParticleState,
    det: &DetectorConfig,
    constants: &AnalyticConstants,
) -> Result<Estimate> {
    require_centered(state)?;
    if !is_exact_resonance(state, det) {
        return Err(Error::InvalidParameter(format!(
            "resonance closed form needs |omega| = m, got omega = {}, m = {}",
            det.omega(),
            state.m()
        )));
    }
    if det.duration() == 0.0 || det.lambda() == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    // One of m ± Ω vanishes; the other equals 2m.
    let off_gap = state.m();
    let (diff, size) = antiderivative_difference(state, det, off_gap, constants)?;
    let root_f = spread_root(state, det.tau_f());
    let root_i = spread_root(state, det.tau_i());
    let resonant = constants.resonance_coefficient * (root_f - root_i).norm_sqr();
    let scale = analytic_scale(state, det);
    let roundoff = 2.0 * diff.norm() * size + (root_f.norm() + root_i.norm()).powi(2);
    Ok(Estimate {
        value: scale * (diff.norm_sqr() + resonant),
        error_estimate: scale * roundoff * 64.0 * f64::EPSILON,
    })
}

fn require_centered(state: &ParticleState) -> Result<()> {
    if state.is_centered() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "closed form requires x0 = 0 and k0 = 0, got x0 = {}, k0 = {}",
            state.x0(),
            state.k0()
        )))
    }
}

/// `λ² m / (2√π σ³)`.
fn analytic_scale(state: &ParticleState, det: &DetectorConfig) -> f64 {
    let lambda = det.lambda();
    lambda * lambda * state.m() / (2.0 * PI.sqrt() * state.sigma().powi(3))
}

/// `√u(τ)` with `u = 1 + iτσ²/m`.
fn spread_root(state: &ParticleState, tau: f64) -> Complex64 {
    let s = state.sigma();
    Complex64::new(1.0, tau * s * s / state.m()).sqrt()
}

/// `I(τ_f) - I(τ_i)` with `I(τ) = e^{κb} √u E_{1/2}(bu)`, plus the
/// magnitude of the larger endpoint value for roundoff bookkeeping.
fn antiderivative_difference(
    state: &ParticleState,
    det: &DetectorConfig,
    gap: f64,
    constants: &AnalyticConstants,
) -> Result<(Complex64, f64)> {
    let a = state.m() + gap;
    let b = state.m() * a / (state.sigma() * state.sigma());
    // For b < 0 the root is taken on the lower imaginary axis so that the
    // argument of the scaled exponential integral stays in the closed right
    // half-plane for every τ ≥ 0.
    let root_b = if b > 0.0 {
        Complex64::new(b.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, -(-b).sqrt())
    };
    let boost = ((constants.prefactor_exponent_scale - 1.0) * b).exp();
    if !boost.is_finite() || boost == 0.0 {
        return Err(Error::overflow(
            "p_matter_analytic",
            format!(
                "exp({:.3e}) is not representable",
                (constants.prefactor_exponent_scale - 1.0) * b
            ),
        ));
    }
    let at = |tau: f64| -> Result<Complex64> {
        let root_u = spread_root(state, tau);
        let scaled = exp_integral_half_scaled(root_b * root_u)?;
        Ok(boost * Complex64::new(0.0, -a * tau).exp() * root_u * scaled)
    };
    let i_f = at(det.tau_f())?;
    let i_i = at(det.tau_i())?;
    let diff = i_f - i_i;
    if !(diff.re.is_finite() && diff.im.is_finite()) {
        return Err(Error::overflow(
            "p_matter_analytic",
            "non-finite antiderivative",
        ));
    }
    Ok((diff, i_f.norm().max(i_i.norm())))
}
