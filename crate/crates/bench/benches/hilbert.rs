use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sea_bench::sampler;
use sea_core::hilbert::{sequential_quotient, std_product};
use sea_core::{check_sea_axioms_sampled, HilbertEffects};

const DIMS: [usize; 4] = [2, 3, 4, 8];

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("std_product");
    for dim in DIMS {
        let mut s = sampler(dim);
        let (a, b) = (s.effect(), s.effect());
        g.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, _| {
            bench.iter(|| std_product(black_box(&a), black_box(&b)).unwrap())
        });
    }
    g.finish();
}

fn quotients(c: &mut Criterion) {
    let mut g = c.benchmark_group("sequential_quotient");
    for dim in DIMS {
        let mut s = sampler(dim);
        let b = s.invertible_effect(0.2);
        let a = std_product(&b, &s.effect()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, _| {
            bench.iter(|| sequential_quotient(black_box(&a), black_box(&b)).unwrap())
        });
    }
    g.finish();
}

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("sea_axioms_50_triples");
    g.sample_size(20);
    for dim in DIMS {
        let mut s = sampler(dim);
        let h = HilbertEffects::new(dim);
        let triples: Vec<_> = (0..50).map(|_| s.triple()).collect();
        g.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, _| {
            bench.iter(|| check_sea_axioms_sampled(&h, black_box(&triples)))
        });
    }
    g.finish();
}

criterion_group!(benches, products, quotients, axioms);
criterion_main!(benches);
