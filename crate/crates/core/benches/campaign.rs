use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opineq::chains::ChainId;
use opineq::harness::{run_campaign, Execution, GeneratorConfig};

fn serial_vs_parallel(c: &mut Criterion) {
    let cfg = GeneratorConfig {
        trials: 500,
        seed: 1,
        ..Default::default()
    };
    let mut group = c.benchmark_group("campaign_500");
    group.sample_size(10);
    for chain in [ChainId::Amgm, ChainId::Thm21, ChainId::Lemma33] {
        for (name, exec) in [("serial", Execution::Serial), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, chain), &exec, |b, &exec| {
                b.iter(|| run_campaign(&cfg, chain, exec).unwrap().summary.failures)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, serial_vs_parallel);
criterion_main!(benches);
