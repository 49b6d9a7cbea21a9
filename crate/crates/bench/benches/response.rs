use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use udw_bench::{centered_state, detector, displaced_state};
use udw_core::quadrature::QuadratureSpec;
use udw_core::response::{p_matter_analytic, p_matter_quad, p_matter_quad2d, p_vacuum};

fn matter(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    let centred = centered_state();
    let displaced = displaced_state();
    let mut g = c.benchmark_group("p_matter");
    for dt in [0.5, 4.0, 20.0] {
        let det = detector(5.0, dt);
        g.bench_function(format!("analytic/dt={dt}"), |b| {
            b.iter(|| p_matter_analytic(black_box(&centred), black_box(&det)))
        });
        g.bench_function(format!("quad1d/dt={dt}"), |b| {
            b.iter(|| p_matter_quad(black_box(&displaced), black_box(&det), &spec))
        });
    }
    g.sample_size(10);
    let det = detector(5.0, 2.0);
    g.bench_function("quad2d/dt=2", |b| {
        b.iter(|| p_matter_quad2d(black_box(&displaced), black_box(&det), &spec))
    });
    g.finish();
}

fn vacuum(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    let mut g = c.benchmark_group("p_vacuum");
    for dt in [0.5, 4.0, 20.0] {
        let det = detector(5.0, dt);
        g.bench_function(format!("dt={dt}"), |b| {
            b.iter(|| p_vacuum(black_box(10.0), black_box(&det), &spec))
        });
    }
    g.finish();
}

criterion_group!(benches, matter, vacuum);
criterion_main!(benches);
