use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subdiv_core::extremal::gen::{complete, cycle, hypercube};
use subdiv_core::extremal::{gen_complete_bipartite, gen_planar_with_k4s};
use subdiv_core::oracle::{find_minor, find_subdivision, is_k4_minor_free, SearchLimits};

fn subdivision(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_subdivision");
    for dim in [3, 4, 5] {
        let g = hypercube(dim);
        group.bench_with_input(BenchmarkId::new("c6_in_q", dim), &g, |b, g| {
            b.iter(|| find_subdivision(black_box(g), &cycle(6), SearchLimits::default()))
        });
    }
    let g = gen_complete_bipartite(3, 4).unwrap();
    group.bench_function("k4_in_k34", |b| b.iter(|| find_subdivision(black_box(&g), &complete(4), SearchLimits::default())));
    group.finish();
}

fn minor(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_minor");
    let chain = gen_planar_with_k4s(8).unwrap().graph;
    for n in [5, 8] {
        let g = gen_complete_bipartite(5, n).unwrap();
        group.bench_with_input(BenchmarkId::new("k4_chain_absent_in_k5", n), &g, |b, g| {
            b.iter(|| find_minor(black_box(g), &chain, SearchLimits::default()))
        });
    }
    let g = gen_complete_bipartite(2, 40).unwrap();
    group.bench_function("k4free_k2_40", |b| b.iter(|| is_k4_minor_free(black_box(&g))));
    group.finish();
}

criterion_group!(benches, subdivision, minor);
criterion_main!(benches);
