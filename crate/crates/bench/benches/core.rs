use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use omegacat::equivalence::category_degree;
use omegacat::validate::validate_strict;
use omegacat_bench::workloads;

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate_strict");
    for p in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(p.name()), &p, |b, p| b.iter(|| validate_strict(p)));
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let mut group = c.benchmark_group("category_degree");
    for p in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(p.name()), &p, |b, p| b.iter(|| category_degree(p)));
    }
    group.finish();
}

criterion_group!(benches, validation, equivalence);
criterion_main!(benches);
