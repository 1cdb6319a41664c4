//! Worker pool against a single worker for exhaustive search, and the
//! batch runner against a plain loop. Build with `--no-default-features`
//! to measure the sequential fallback on its own.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hedonic::core::Partition;
use hedonic::dynamics::{run, run_batch, Policy, RunConfig};
use hedonic::instances::{build, random, FhgFamily, RandomSpec};
use hedonic::search::{exists_is_partition, exists_path_to_is, SearchBudget, Strategy};

fn workers() -> Vec<usize> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    if all > 1 {
        vec![1, all]
    } else {
        vec![1]
    }
}

fn existence(c: &mut Criterion) {
    let game = random(RandomSpec::Fhg(FhgFamily::Symmetric), 10, 3).unwrap();
    let ahg15 = build("ahg15").unwrap().game;
    let mut group = c.benchmark_group("exists_is_partition");
    group.sample_size(10);
    for w in workers() {
        let budget = SearchBudget::default().with_parallelism(w);
        group.bench_with_input(BenchmarkId::new("plain-fhg10", w), &budget, |b, budget| {
            b.iter(|| exists_is_partition(black_box(&game), Strategy::Plain, budget).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("type-reduced-ahg15", w), &budget, |b, budget| {
            b.iter(|| exists_is_partition(black_box(&ahg15), Strategy::TypeReduced, budget).unwrap())
        });
    }
    group.finish();
}

fn reachability(c: &mut Criterion) {
    let game = random(RandomSpec::Dhg { symmetric: false, density: 0.5 }, 8, 5).unwrap();
    let start = Partition::singletons(8);
    let mut group = c.benchmark_group("exists_path_to_is");
    group.sample_size(10);
    for w in workers() {
        let budget = SearchBudget::default().with_parallelism(w);
        group.bench_with_input(BenchmarkId::new("dhg8", w), &budget, |b, budget| {
            b.iter(|| exists_path_to_is(black_box(&game), &start, budget).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let seeds: Vec<u64> = (0..64).collect();
    let cfg = RunConfig { record_trace: false, ..RunConfig::default() };
    let one = |&seed: &u64| {
        let g = random(RandomSpec::Ahg { strict: true, natural_sp: true }, 30, seed).unwrap();
        run(&g, &Partition::singletons(30), &Policy::SeededRandom(seed), &cfg).unwrap().steps()
    };
    let mut group = c.benchmark_group("random_runs");
    group.sample_size(10);
    group.bench_function("loop", |b| b.iter(|| seeds.iter().map(one).collect::<Vec<_>>()));
    group.bench_function("run_batch", |b| b.iter(|| run_batch(&seeds, one)));
    group.finish();
}

criterion_group!(benches, existence, reachability, batch);
criterion_main!(benches);
