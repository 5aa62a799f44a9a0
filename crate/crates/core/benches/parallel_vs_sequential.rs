use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use obstacle_core::par::Execution;
use obstacle_core::solvers::{MajorantOptions, Relaxation, SolverOptions};
use obstacle_core::study::converge;
use obstacle_core::tables::{Benchmark, TableKind};
use obstacle_core::verify::{identity_checks, VerifyConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn benches() -> [Benchmark; 2] {
    [
        Benchmark::classical_default().unwrap(),
        Benchmark::double_default().unwrap(),
    ]
}

fn combined_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("combined_table");
    for bench in benches() {
        let pairs = bench.pairs(&bench.default_eps(TableKind::Combined));
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(bench.name(), mode), &exec, |b, &exec| {
                b.iter(|| black_box(bench.combined_table(&pairs, exec).unwrap()))
            });
        }
    }
    g.finish();
}

fn random_identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("random_identities");
    g.sample_size(10);
    for bench in benches() {
        for (mode, exec) in MODES {
            let cfg = VerifyConfig {
                identity_samples: 64,
                exec,
                ..Default::default()
            };
            g.bench_with_input(BenchmarkId::new(bench.name(), mode), &cfg, |b, cfg| {
                b.iter(|| black_box(identity_checks(&bench, cfg).unwrap()))
            });
        }
    }
    g.finish();
}

fn mesh_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("mesh_sweep");
    g.sample_size(10);
    let opts = SolverOptions {
        relaxation: Relaxation::Optimal,
        ..Default::default()
    };
    let levels = [16, 32, 64, 128];
    for bench in benches() {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(bench.name(), mode), &exec, |b, &exec| {
                b.iter(|| black_box(converge(&bench, &levels, &opts, &MajorantOptions::default(), exec).unwrap()))
            });
        }
    }
    g.finish();
}

criterion_group!(parallel_vs_sequential, combined_tables, random_identities, mesh_sweep);
criterion_main!(parallel_vs_sequential);
