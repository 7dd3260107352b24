use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubic_lines::builders::ExampleName;
use cubic_lines::jacobian::{mdr, total_tjurina_algebraic};
use cubic_lines::linalg::RankMethod;
use cubic_lines_bench::{product, tjurina_matrix};

fn invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariants");
    group.sample_size(10).measurement_time(Duration::from_secs(20));
    for name in [ExampleName::El6, ExampleName::El7, ExampleName::Cppp] {
        let f = product(name);
        group.bench_with_input(BenchmarkId::new("mdr", name), &f, |b, f| b.iter(|| mdr(black_box(f)).unwrap()));
        group.bench_with_input(BenchmarkId::new("tau", name), &f, |b, f| {
            b.iter(|| total_tjurina_algebraic(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    for name in [ExampleName::El7, ExampleName::Cppp] {
        let a = tjurina_matrix(name);
        for method in [RankMethod::Exact, RankMethod::Modular] {
            let id = BenchmarkId::new(format!("{method:?}").to_lowercase(), name);
            group.bench_with_input(id, &a, |b, a| b.iter(|| black_box(a).rank_with(method)));
        }
    }
    group.finish();
}

criterion_group!(benches, invariants, rank);
criterion_main!(benches);
