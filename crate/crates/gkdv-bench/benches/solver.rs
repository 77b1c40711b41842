use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gkdv::{
    classify, reconstruct, rk_solve, solve, sweep, CoefficientFunction, GKdVEquation, Grid,
    OracleConfig, SolveOutcome, SolverConfig,
};
use gkdv_bench::standard_ivp;

fn bench_sweep(c: &mut Criterion) {
    let ivp = standard_ivp();
    let mut group = c.benchmark_group("sweep");
    for n in [10_000usize, 100_000] {
        let grid = Grid::new(0.0, 50.0, n).unwrap();
        let mut start = vec![0.0; grid.node_count()];
        start[..3].fill(ivp.gamma);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| sweep(black_box(&ivp), &grid, &start).unwrap())
        });
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let ivp = standard_ivp();
    c.bench_function("solve/standard_100k", |b| {
        b.iter(|| solve(black_box(&ivp), &SolverConfig::with_n(100_000)).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let ivp = standard_ivp();
    let grid = Grid::new(0.0, 50.0, 1000).unwrap();
    let cfg = OracleConfig {
        rel_tol: 1e-8,
        abs_tol: 1e-10,
        max_steps: 2_000_000,
    };
    c.bench_function("oracle/standard_rel1e-8", |b| {
        b.iter(|| rk_solve(black_box(&ivp), &grid, &cfg).unwrap())
    });
}

fn bench_classify(c: &mut Criterion) {
    let eq = GKdVEquation::new(
        1.0,
        CoefficientFunction::AffinePower {
            lambda: 2.0,
            alpha: 1.0,
            beta: 0.0,
            rho: 1.5,
        },
        CoefficientFunction::PowerLawDamping { j: 0.5 },
    )
    .unwrap();
    c.bench_function("classify/damped_power", |b| {
        b.iter(|| classify(black_box(&eq)).unwrap())
    });
}

fn bench_reconstruct(c: &mut Criterion) {
    let ivp = standard_ivp();
    let profile = match solve(&ivp, &SolverConfig::with_n(50_000)).unwrap() {
        SolveOutcome::Converged(p) => p,
        other => panic!("{}", other.status()),
    };
    let ansatz = ivp.ansatz.unwrap();
    let xs: Vec<f64> = (0..201).map(|i| i as f64 * 0.05).collect();
    let ts: Vec<f64> = (1..=10).map(|i| i as f64 * 0.2).collect();
    c.bench_function("reconstruct/201x10", |b| {
        b.iter(|| reconstruct(black_box(&ansatz), &profile, &xs, &ts).unwrap())
    });
}

criterion_group!(
    benches,
    bench_sweep,
    bench_solve,
    bench_oracle,
    bench_classify,
    bench_reconstruct
);
criterion_main!(benches);
