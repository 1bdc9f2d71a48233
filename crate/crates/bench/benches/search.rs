use criterion::{criterion_group, criterion_main, Criterion};
use lifedens::bounds::{optimal_weights_lp, verify_certificate};
use lifedens::search::{max_density, max_still_life_density, DEFAULT_BUDGET};
use lifedens::{Constraint, Neighborhood};
use lifedens_bench::{fibonacci_certificate, second_certificate};

fn torus_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("max_density");
    g.sample_size(10);
    for (dims, n) in [([4, 4], 2), ([5, 5], 6), ([6, 6], 1), ([6, 6], 3)] {
        let con = Constraint::max_degree(Neighborhood::moore8(), n);
        g.bench_function(format!("{}x{} n={n}", dims[0], dims[1]), |b| {
            b.iter(|| max_density(&dims, &con, DEFAULT_BUDGET).unwrap())
        });
    }
    g.bench_function("still life 4x4", |b| b.iter(|| max_still_life_density(&[4, 4], DEFAULT_BUDGET).unwrap()));
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let mut g = c.benchmark_group("certificates");
    g.sample_size(10);
    let fib = fibonacci_certificate();
    let second = second_certificate();
    g.bench_function("fibonacci", |b| b.iter(|| verify_certificate(&fib, DEFAULT_BUDGET).unwrap()));
    g.bench_function("second", |b| b.iter(|| verify_certificate(&second, DEFAULT_BUDGET).unwrap()));
    g.bench_function("lp 3x3 n=4", |b| b.iter(|| optimal_weights_lp(3, 3, &Neighborhood::moore8(), 4).unwrap()));
    g.finish();
}

criterion_group!(benches, torus_search, certificates);
criterion_main!(benches);
