use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sea_bench::solver_cases;
use sea_core::enumerate_products;

fn solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_products");
    for (name, alg) in solver_cases() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &alg, |b, alg| {
            b.iter(|| enumerate_products(black_box(alg), 64).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, solver);
criterion_main!(benches);
