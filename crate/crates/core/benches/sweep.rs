use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use heegaard_links::pants_path::{build_path_with, CurveOrder};
use heegaard_links::sweep::{oracle_agreement, sweep};
use heegaard_links::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_4_20");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sweep(4, 20, None, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_n7");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| oracle_agreement(7, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_path(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_path_12_1");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_path_with(12, 1, CurveOrder::ParityBlocks, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_oracle, bench_path);
criterion_main!(benches);
