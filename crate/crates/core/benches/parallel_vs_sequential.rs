use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stablab::par::Execution;
use stablab::stability::{run_experiment, ExperimentConfig};
use stablab::verify::{run_suite, Suite};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn miller_suite(c: &mut Criterion) {
    // warm the catalog caches outside the timed region
    run_suite(Suite::Multiplier, 4, Execution::Sequential).unwrap();
    let mut group = c.benchmark_group("miller_suite_order_12");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| assert!(run_suite(Suite::Miller, 12, exec).unwrap().ok()))
        });
    }
    group.finish();
}

fn solver_batch(c: &mut Criterion) {
    let cfg = ExperimentConfig { n: 8, delta: 1e-3, runs: 16, seed: 5, group: "S3".parse().unwrap(), ..Default::default() };
    let mut group = c.benchmark_group("solver_batch_s3_n8");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_experiment(&cfg, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, miller_suite, solver_batch);
criterion_main!(benches);
