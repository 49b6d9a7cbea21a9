use std::f64::consts::PI;

use proptest::prelude::*;
use udw_core::kernels::{
    matter_amplitude_factor, matter_prefactor, phi_squared_matter, qm_density, qm_wavefunction,
    wightman_matter, wightman_vacuum,
};
use udw_core::quadrature::{integrate_1d, IntegrandHints, QuadratureSpec};
use udw_core::specfun::{bessel_j0, bessel_k0_complex, bessel_y0};
use udw_core::{Complex64, ParticleState};

fn state(x0: f64, k0: f64) -> ParticleState {
    ParticleState::new(10.0, x0, k0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn density_peak_values() {
    let s = state(1.5, 0.3);
    assert!(rel(phi_squared_matter(&s, 0.0, 1.5), 1.0 / (10.0 * PI.sqrt())) < 1e-15);
    assert!(rel(qm_density(&s, 0.0, 1.5), 1.0 / PI.sqrt()) < 1e-15);
    let psi = qm_wavefunction(&s, 0.0, 1.5);
    assert!((psi - Complex64::new((1.0 / PI.sqrt()).sqrt(), 0.0)).norm() < 1e-15);
}

#[test]
fn density_is_symmetric_about_the_centre() {
    let s = state(-0.7, 0.0);
    for d in [0.1, 0.5, 2.0] {
        assert_eq!(
            phi_squared_matter(&s, 0.0, -0.7 + d),
            phi_squared_matter(&s, 0.0, -0.7 - d)
        );
    }
}

#[test]
fn width_grows_with_spreading_factor() {
    let s = state(0.0, 0.0);
    let t = 25.0;
    let spread = (1.0 + (t / 10.0f64).powi(2)).sqrt();
    // Half-maximum points scale with the spreading factor.
    let half = |t: f64, w: f64| qm_density(&s, t, w * (2f64.ln()).sqrt()) / qm_density(&s, t, 0.0);
    assert!((half(0.0, 1.0) - 0.5).abs() < 1e-14);
    assert!((half(t, spread) - 0.5).abs() < 1e-14);
}

#[test]
fn wavefunction_is_normalised() {
    let spec = QuadratureSpec::default();
    for (s, t) in [(state(0.0, 0.0), 0.0), (state(1.0, 0.5), 50.0)] {
        let centre = s.x0() + s.k0() * t / s.m();
        let width = (1.0 + (t / s.m()).powi(2)).sqrt();
        let f = |x: f64| Complex64::new(qm_wavefunction(&s, t, x).norm_sqr(), 0.0);
        let r = integrate_1d(
            f,
            centre - 12.0 * width,
            centre + 12.0 * width,
            &spec,
            IntegrandHints::default(),
        )
        .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-8, "t={t}: {}", r.value.re);
    }
}

#[test]
fn vacuum_kernel_values() {
    let m = 10.0;
    let e = 0.37;
    let w = wightman_vacuum(m, 1.0, 1.0, e * 2.0 / m).unwrap();
    let k = bessel_k0_complex(Complex64::new(2.0 * e, 0.0)).unwrap();
    assert_eq!(w.im, 0.0);
    assert!(rel(w.re, k.re / (2.0 * PI)) < 1e-15);

    let w = wightman_vacuum(m, 0.1, 0.0, 1e-8 / m).unwrap();
    let expected = -0.25 * Complex64::new(bessel_y0(1.0).unwrap(), bessel_j0(1.0).unwrap());
    assert!((w - expected).norm() < 1e-7);
}

#[test]
fn matter_kernel_at_the_origin() {
    let s = state(0.0, 0.0);
    let w = wightman_matter(&s, 0.0, 0.0);
    assert!(rel(w.re, 1.0 / (PI.sqrt() * 10.0)) < 1e-15);
    assert_eq!(w.im, 0.0);
    assert_eq!(matter_amplitude_factor(&s, 0.0), Complex64::new(1.0, 0.0));
}

#[test]
fn coincidence_matches_density_on_the_worldline() {
    for (x0, k0) in [(0.0, 0.0), (1.0, 0.5), (-2.5, -0.8)] {
        let s = state(x0, k0);
        for i in 0..=400 {
            let tau = 0.05 * i as f64;
            let w = wightman_matter(&s, tau, tau);
            let phi2 = phi_squared_matter(&s, tau, 0.0);
            assert!(rel(w.re, phi2) < 1e-10, "tau={tau}");
            assert!(w.im.abs() < 1e-12 * phi2);
            let a = matter_amplitude_factor(&s, tau);
            assert!(rel(2.0 * matter_prefactor(&s) * a.norm_sqr(), w.re) < 1e-12);
        }
    }
}

#[test]
fn falloff_in_position() {
    // |W_m(0, 0)| ∝ exp(-x0²): log-linear in x0² with slope -1.
    let xs: Vec<f64> = (0..=16).map(|i| 0.25 * i as f64).collect();
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| wightman_matter(&state(x, 0.0), 0.0, 0.0).norm().ln())
        .collect();
    let n = xs.len() as f64;
    let u: Vec<f64> = xs.iter().map(|x| x * x).collect();
    let (su, sy) = (u.iter().sum::<f64>(), ys.iter().sum::<f64>());
    let suu = u.iter().map(|a| a * a).sum::<f64>();
    let suy = u.iter().zip(&ys).map(|(a, b)| a * b).sum::<f64>();
    let slope = (n * suy - su * sy) / (n * suu - su * su);
    assert!((slope + 1.0).abs() < 0.02, "slope {slope}");
}

proptest! {
    #[test]
    fn density_identity(x0 in -3.0..3.0f64, k0 in -1.0..1.0f64, t in 0.0..20.0f64, dx in -3.0..3.0f64) {
        let s = state(x0, k0);
        let x = x0 + k0 * t / 10.0 + dx;
        let a = 10.0 * phi_squared_matter(&s, t, x);
        prop_assert!(rel(a, qm_density(&s, t, x)) < 1e-12);
        prop_assert!(rel(qm_wavefunction(&s, t, x).norm_sqr(), qm_density(&s, t, x)) < 1e-12);
    }

    #[test]
    fn matter_kernel_symmetries(x0 in -3.0..3.0f64, k0 in -1.0..1.0f64, tau in 0.0..20.0f64, tau_p in 0.0..20.0f64) {
        let s = state(x0, k0);
        let w = wightman_matter(&s, tau, tau_p);
        let swapped = wightman_matter(&s, tau_p, tau);
        prop_assert!((w - swapped).norm() <= 1e-14 * w.norm().max(1e-300));
        let flipped = wightman_matter(&state(-x0, -k0), tau, tau_p);
        prop_assert!((w - flipped).norm() <= 1e-14 * w.norm().max(1e-300));
        let c = matter_prefactor(&s);
        let (a, b) = (matter_amplitude_factor(&s, tau), matter_amplitude_factor(&s, tau_p));
        let factored = c * (a * b.conj() + b * a.conj());
        // The two terms can cancel, so compare on the scale of one term.
        let scale = c * a.norm() * b.norm();
        prop_assert!((factored - w).norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn full_two_point_function_is_hermitian(tau in 0.0..10.0f64, tau_p in 0.0..10.0f64, x0 in -2.0..2.0f64) {
        prop_assume!((tau - tau_p).abs() > 1e-3);
        let s = state(x0, 0.2);
        let total = |a: f64, b: f64| wightman_vacuum(10.0, a, b, 1e-3).unwrap() + wightman_matter(&s, a, b);
        let lhs = total(tau, tau_p).conj();
        let rhs = total(tau_p, tau);
        prop_assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm());
    }
}
