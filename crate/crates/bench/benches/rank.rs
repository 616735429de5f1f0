use confh_bench::boundary_blocks;
use confh_core::linalg::{rank_exact, rank_hybrid, rank_modular, HybridPolicy};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(20);
    for (spec, n) in [("sigma:2", 8), ("cp:2", 8), ("t2", 10)] {
        let blocks = boundary_blocks(spec, n);
        let label = format!("{spec}/n={n}");
        let policy = HybridPolicy::from_seed(0);
        group.bench_with_input(BenchmarkId::new("exact", &label), &blocks, |b, blocks| {
            b.iter(|| blocks.iter().map(|m| rank_exact(black_box(m)).rank).sum::<usize>())
        });
        group.bench_with_input(BenchmarkId::new("modular", &label), &blocks, |b, blocks| {
            b.iter(|| blocks.iter().map(|m| rank_modular(black_box(m), policy.primes[0]).map_or(0, |r| r.rank)).sum::<usize>())
        });
        group.bench_with_input(BenchmarkId::new("hybrid", &label), &blocks, |b, blocks| {
            b.iter(|| blocks.iter().map(|m| rank_hybrid(black_box(m), &policy).rank).sum::<usize>())
        });
    }
    group.finish();
}

criterion_group!(benches, ranks);
criterion_main!(benches);
