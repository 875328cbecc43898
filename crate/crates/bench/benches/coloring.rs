use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use streamcolor_bench::fixture;
use streamcolor_core::arb::run_algorithm3;
use streamcolor_core::delta::run_algorithm1;
use streamcolor_core::oracle::degeneracy;
use streamcolor_core::peel::peel;
use streamcolor_core::{GenSpec, Order, StoredGraph};

fn bench_delta(c: &mut Criterion) {
    let mut group = c.benchmark_group("color_delta");
    for &m in &[50_000u64, 200_000] {
        let (g, stream) = fixture(&GenSpec::gnm(1 << 12, m, 1).with_order(Order::Random));
        let delta = g.meta.max_degree.unwrap();
        group.throughput(Throughput::Elements(m));
        group.bench_with_input(BenchmarkId::from_parameter(m), &stream, |b, s| {
            b.iter(|| {
                let mut s = s.clone();
                black_box(run_algorithm1(&mut s, delta, 0.5, 1.0, 7).ok())
            })
        });
    }
    group.finish();
}

fn bench_peel(c: &mut Criterion) {
    let mut group = c.benchmark_group("peel");
    for &alpha in &[2u32, 8] {
        let (g, stream) = fixture(&GenSpec::forest_union(20_000, alpha, 3));
        group.throughput(Throughput::Elements(g.edges.len() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(alpha), &stream, |b, s| {
            b.iter(|| {
                let mut s = s.clone();
                black_box(peel(&mut s, alpha, 0.5).unwrap().passes)
            })
        });
    }
    group.finish();
}

fn bench_arb(c: &mut Criterion) {
    let mut group = c.benchmark_group("color_arb");
    let (g, stream) = fixture(&GenSpec::forest_union(10_000, 16, 5));
    group.throughput(Throughput::Elements(g.edges.len() as u64));
    group.bench_function("forest_union_a16", |b| {
        b.iter(|| {
            let mut s = stream.clone();
            black_box(
                run_algorithm3(&mut s, 16, 0.5, 1.0, 2)
                    .unwrap()
                    .metrics
                    .colors_used,
            )
        })
    });
    group.finish();
}

fn bench_degeneracy(c: &mut Criterion) {
    let (g, _) = fixture(&GenSpec::gnm(1 << 12, 100_000, 9));
    let stored = StoredGraph::from_edges(1 << 12, &g.edges);
    c.bench_function("oracle_degeneracy", |b| {
        b.iter(|| black_box(degeneracy(&stored).d))
    });
}

criterion_group!(
    benches,
    bench_delta,
    bench_peel,
    bench_arb,
    bench_degeneracy
);
criterion_main!(benches);
