use std::hint::black_box;

use atddg_core::sim::{self, SimConfig, StrategySet};
use atddg_core::{game, oracle, quartic, ReducedState};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn example1() -> ReducedState {
    ReducedState::new(6.0, 3.0, 2.0, 0.5).unwrap()
}

fn solver(c: &mut Criterion) {
    let s = example1();
    c.bench_function("solve/example1", |b| b.iter(|| game::solve(black_box(&s)).unwrap()));

    let capture = ReducedState::new(6.0, 3.0, 2.0, 0.3).unwrap();
    c.bench_function("solve/capture", |b| b.iter(|| game::solve(black_box(&capture)).unwrap()));

    let q = quartic::game_quartic(&s).unwrap();
    c.bench_function("quartic/roots", |b| {
        b.iter(|| quartic::real_roots_bracketed(black_box(&q), 2.0).unwrap())
    });
}

fn oracle_grid(c: &mut Criterion) {
    let s = example1();
    let mut group = c.benchmark_group("oracle/maxmin");
    for n in [101, 401] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| oracle::brute_force_maxmin(&s, 4.0 / 3.0, 4.0, n).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let s = example1();
    let sol = game::solve(&s).unwrap();
    let cfg = SimConfig::default_for(&s);
    c.bench_function("simulate/example1", |b| {
        b.iter(|| sim::simulate(&s, &StrategySet::OPTIMAL, &sol, black_box(&cfg)).unwrap())
    });
}

criterion_group!(benches, solver, oracle_grid, simulation);
criterion_main!(benches);
