use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tourney_bench::{noisy, planted};
use tourney_core::{
    count_directed_triangles, exact_min_backward, find_dk, local_search_ordering, Density,
    PipelineConfig,
};

fn triangles(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_directed_triangles");
    for n in [256, 1024, 2048] {
        let t = noisy(n, 0.2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| count_directed_triangles(black_box(t)))
        });
    }
    group.finish();
}

fn orderings(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_search_ordering");
    group.sample_size(10);
    for n in [256, 1024] {
        let t = noisy(n, 0.1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| local_search_ordering(black_box(t), 1))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("exact_min_backward");
    group.sample_size(10);
    for n in [12, 16, 20] {
        let t = noisy(n, 0.3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| exact_min_backward(black_box(t)).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_dk");
    group.sample_size(10);
    let cfg = PipelineConfig::default();
    let t = noisy(1000, 0.15);
    group.bench_function("eps-random n=1000 k=3", |b| {
        b.iter(|| find_dk(black_box(&t), 3, Density::new(3, 20), &cfg).unwrap())
    });
    let t = planted(2048);
    group.bench_function("planted-long n=2048 k=1", |b| {
        b.iter(|| find_dk(black_box(&t), 1, Density::new(1, 1 << 17), &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, triangles, orderings, search);
criterion_main!(benches);
