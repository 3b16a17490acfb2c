use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use orca_bench::{maze, short_run, sphere};
use orca_core::baselines::{run_ba, run_pso, BatParams, PsoParams};
use orca_core::maze::SolutionPath;
use orca_core::seed::rng_from_seed;
use orca_core::{run_aoa, AlgorithmParams};
use std::hint::black_box;

fn path_ops(c: &mut Criterion) {
    let space = maze(30, 60.0);
    let grid = space.grid().clone();
    let cap = space.max_length();
    c.bench_function("extend_random/30x30/k=60", |b| {
        let mut rng = rng_from_seed(1);
        b.iter_batched(
            || SolutionPath::empty(&grid, cap),
            |mut p| {
                p.extend_random(60, &grid, &mut rng);
                p
            },
            BatchSize::SmallInput,
        )
    });
}

fn solvers(c: &mut Criterion) {
    let (shape, budgets) = short_run();
    let params = AlgorithmParams::tuned();
    let mut group = c.benchmark_group("solvers");
    group.sample_size(10);
    for size in [15, 30] {
        let space = maze(size, 100.0);
        group.bench_function(format!("aoa/maze{size}"), |b| {
            let mut seed = 0;
            b.iter(|| {
                seed += 1;
                black_box(run_aoa(&space, &params, &shape, &budgets, seed).unwrap())
            })
        });
    }
    let space = maze(15, 100.0);
    group.bench_function("pso/maze15", |b| {
        b.iter(|| black_box(run_pso(&space, &PsoParams::default(), 1).unwrap()))
    });
    group.bench_function("ba/maze15", |b| {
        b.iter(|| black_box(run_ba(&space, &BatParams::default(), 1).unwrap()))
    });
    let s = sphere(10);
    group.bench_function("aoa/sphere10", |b| {
        b.iter(|| black_box(run_aoa(&s, &params, &shape, &budgets, 1).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, path_ops, solvers);
criterion_main!(benches);
