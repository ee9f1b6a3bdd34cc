use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use latticelab::harness::{random_corpus, run_conformance, select_checks, HarnessConfig};
use latticelab::linmor::enumerate_linmors;
use latticelab::properties::{check_rickart_family, RickartKind};
use latticelab::{EndoMonoid, Limits};
use latticelab_bench::workloads;

fn enumerate(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("enumerate_linmors");
    for l in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(l.name()), &l, |b, l| {
            b.iter(|| enumerate_linmors(black_box(l), l, &limits).unwrap().len())
        });
    }
    group.finish();
}

fn rickart(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("rickart_family");
    for l in workloads() {
        let m = EndoMonoid::full(&l, &limits).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(l.name()), &m, |b, m| {
            b.iter(|| RickartKind::ALL.map(|k| check_rickart_family(black_box(m), k).holds))
        });
    }
    group.finish();
}

fn conformance(c: &mut Criterion) {
    let corpus = random_corpus(42, 20, 8).unwrap();
    let checks = select_checks(&[]).unwrap();
    let config = HarnessConfig::default();
    c.bench_function("conformance_20_random", |b| {
        b.iter(|| run_conformance(black_box(&corpus), &checks, &config).failed())
    });
}

criterion_group!(benches, enumerate, rickart, conformance);
criterion_main!(benches);
