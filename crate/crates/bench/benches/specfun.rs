use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use udw_core::specfun::{bessel_j0, bessel_k0_complex, bessel_y0, erfc_complex, exp_integral_half};
use udw_core::Complex64;

fn bessel(c: &mut Criterion) {
    let mut g = c.benchmark_group("bessel");
    for x in [0.5, 5.0, 50.0] {
        g.bench_function(format!("j0/{x}"), |b| b.iter(|| bessel_j0(black_box(x))));
        g.bench_function(format!("y0/{x}"), |b| b.iter(|| bessel_y0(black_box(x))));
    }
    for z in [
        Complex64::new(0.3, 0.4),
        Complex64::new(0.0, 3.0),
        Complex64::new(8.0, -20.0),
    ] {
        g.bench_function(format!("k0/{z}"), |b| {
            b.iter(|| bessel_k0_complex(black_box(z)))
        });
    }
    g.finish();
}

fn error_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("error_functions");
    for z in [
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 3.0),
        Complex64::new(0.2, 25.0),
    ] {
        g.bench_function(format!("erfc/{z}"), |b| {
            b.iter(|| erfc_complex(black_box(z)))
        });
        g.bench_function(format!("e_half/{z}"), |b| {
            b.iter(|| exp_integral_half(black_box(z)))
        });
    }
    g.finish();
}

criterion_group!(benches, bessel, error_functions);
criterion_main!(benches);
