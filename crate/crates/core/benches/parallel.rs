use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gibbsdom::ising::{critical_coupling, stationary, transition_matrix};
use gibbsdom::oracle::{build_tree, chain_distribution, FiniteTree, Limits};
use gibbsdom::sweep::{hstar_curve, linspace, root_census};
use gibbsdom::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_chain_distribution(c: &mut Criterion) {
    // d = 3, depth 2: 1 + 4 + 12 = 17 vertices, 2^17 configurations.
    let tree: FiniteTree = build_tree(3, 2, 20).unwrap();
    let p = transition_matrix(0.8, 0.4).unwrap();
    let nu = stationary(&p).unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("chain_distribution_17");
    group.sample_size(20);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| chain_distribution(black_box(&tree), &p, &nu, &limits, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_root_census(c: &mut Criterion) {
    let d = 3;
    let jc = critical_coupling(d).unwrap();
    let js = linspace(0.05, 4.0 * jc, 60).unwrap();
    let hs = linspace(-3.0, 3.0, 60).unwrap();
    let mut group = c.benchmark_group("root_census_60x60");
    group.sample_size(20);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| root_census(d, black_box(&js), &hs, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_hstar_curve(c: &mut Criterion) {
    let mut group = c.benchmark_group("hstar_curve_2000");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| hstar_curve(4, 0.01, 5.0, black_box(2000), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_chain_distribution, bench_root_census, bench_hstar_curve);
criterion_main!(benches);
