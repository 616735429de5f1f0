use confh_bench::{manifold, torus};
use confh_core::quasipoly::verify_extremal_degree;
use confh_core::{Engine, EngineConfig, RankMode};
use criterion::{criterion_group, criterion_main, Criterion};

fn extremal(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal");
    group.sample_size(10);

    let t2 = torus();
    let config = EngineConfig::default().auto_reduced(&t2);
    group.bench_function("t2/offset0/n<=16", |b| b.iter(|| verify_extremal_degree(&t2, 0, 16, &config).unwrap()));

    let sigma = manifold("sigma:2");
    for mode in [RankMode::Hybrid, RankMode::Exact] {
        let config = EngineConfig { window: Some(2), rank_mode: mode, ..EngineConfig::default() }.auto_reduced(&sigma);
        group.bench_function(format!("sigma2/offset0/n<=24/{}", mode.tag()), |b| {
            b.iter(|| verify_extremal_degree(&sigma, 0, 24, &config).unwrap())
        });
    }

    let full = EngineConfig { rank_mode: RankMode::Hybrid, ..EngineConfig::default() };
    let engine = Engine::new(&sigma, full).unwrap();
    group.bench_function("sigma2/full-betti/n=8", |b| b.iter(|| engine.betti(8).unwrap()));
    group.finish();
}

criterion_group!(benches, extremal);
criterion_main!(benches);
