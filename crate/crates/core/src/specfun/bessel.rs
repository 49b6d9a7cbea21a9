use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, SQRT_2};

use num_complex::Complex64;

use super::{check_finite_complex, check_finite_real, EULER_GAMMA};
use crate::error::{Error, Result};

/// Below this the ascending series is used for J0 and Y0.
const SERIES_LIMIT: f64 = 2.0;
/// Between `SERIES_LIMIT` and this, Miller's backward recurrence.
const RECURRENCE_LIMIT: f64 = 25.0;
/// K0: ascending series inside this radius, Steed's continued fraction outside.
const K0_SERIES_RADIUS: f64 = 2.0;

/// Bessel function of the first kind of order zero, `x ≥ 0`.
pub fn bessel_j0(x: f64) -> Result<f64> {
    check_finite_real("bessel_j0", x)?;
    if x < 0.0 {
        return Err(Error::domain("bessel_j0", format!("x = {x} < 0")));
    }
    Ok(if x <= SERIES_LIMIT {
        j0_series(x)
    } else if x <= RECURRENCE_LIMIT {
        miller(x).j0
    } else {
        hankel_asymptotic(x).0
    })
}

/// Bessel function of the second kind of order zero, `x > 0`.
pub fn bessel_y0(x: f64) -> Result<f64> {
    check_finite_real("bessel_y0", x)?;
    if x <= 0.0 {
        return Err(Error::domain("bessel_y0", format!("x = {x} <= 0")));
    }
    Ok(if x <= SERIES_LIMIT {
        y0_series(x)
    } else if x <= RECURRENCE_LIMIT {
        let m = miller(x);
        FRAC_2_PI * ((0.5 * x).ln() + EULER_GAMMA) * m.j0 - 2.0 * FRAC_2_PI * m.neumann_sum
    } else {
        hankel_asymptotic(x).1
    })
}

/// Modified Bessel function of the second kind of order zero on the closed
/// right half-plane (principal branch), `z ≠ 0`.
pub fn bessel_k0_complex(z: Complex64) -> Result<Complex64> {
    check_finite_complex("bessel_k0_complex", z)?;
    if z.re < 0.0 {
        return Err(Error::domain(
            "bessel_k0_complex",
            format!("Re z = {} < 0", z.re),
        ));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain(
            "bessel_k0_complex",
            "logarithmic pole at z = 0",
        ));
    }
    Ok(if z.norm() <= K0_SERIES_RADIUS {
        k0_series(z)
    } else {
        k0_steed(z)
    })
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn y0_series(x: f64) -> f64 {
    // Y0 = (2/π)[(ln(x/2) + γ) J0(x) + Σ_{k≥1} (-1)^{k+1} H_k (x²/4)^k / (k!)²]
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        let t = -term * harmonic;
        sum += t;
        if t.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_PI * (((0.5 * x).ln() + EULER_GAMMA) * j0_series(x) + sum)
}

struct MillerSums {
    j0: f64,
    /// Σ_{k≥1} (-1)^k J_{2k}(x) / k
    neumann_sum: f64,
}

/// Backward recurrence normalised with 1 = J0 + 2 Σ J_{2k}.
fn miller(x: f64) -> MillerSums {
    let start = 2 * ((1.5 * x + 40.0) / 2.0).ceil() as usize;
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0; // J_{n+1}
    let mut j_cur = 1e-30; // J_n
    let mut norm = 0.0;
    let mut neumann = 0.0;
    for n in (1..=start).rev() {
        if n % 2 == 0 {
            let k = (n / 2) as f64;
            norm += 2.0 * j_cur;
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            neumann += sign * j_cur / k;
        }
        let j_prev = n as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
    }
    norm += j_cur;
    MillerSums {
        j0: j_cur / norm,
        neumann_sum: neumann / norm,
    }
}

/// Hankel expansion, returns (J0, Y0).
fn hankel_asymptotic(x: f64) -> (f64, f64) {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= odd * odd / (8.0 * k as f64 * x);
        if term > prev || term < 1e-17 {
            break;
        }
        prev = term;
        // k odd feeds Q, k even feeds P, with alternating signs within each.
        match k % 4 {
            1 => q -= term,
            2 => p -= term,
            3 => q += term,
            _ => p += term,
        }
    }
    let (s, c) = x.sin_cos();
    let cos_chi = (c + s) / SQRT_2;
    let sin_chi = (s - c) / SQRT_2;
    let amp = (FRAC_2_PI / x).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}

fn k0_series(z: Complex64) -> Complex64 {
    // K0 = -(ln(z/2) + γ) I0(z) + Σ_{k≥1} H_k (z²/4)^k / (k!)²
    let q = 0.25 * z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut i0 = term;
    let mut tail = Complex64::new(0.0, 0.0);
    let mut harmonic = 0.0;
    for k in 1..80 {
        let kf = k as f64;
        term = term * q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term.norm() * harmonic < 1e-17 * tail.norm().max(i0.norm()) {
            break;
        }
    }
    -((0.5 * z).ln() + EULER_GAMMA) * i0 + tail
}

/// Steed's algorithm for Temme's second continued fraction, order zero.
fn k0_steed(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut b = 2.0 * (one + z);
    let mut d = one / b;
    let mut delh = d;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = one;
    let a1 = 0.25;
    let mut q = Complex64::new(a1, 0.0);
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    for i in 2..20_000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 1e-17 * s.norm() {
            break;
        }
    }
    (Complex64::new(FRAC_PI_2, 0.0) / z).sqrt() * (-z).exp() / s
}
