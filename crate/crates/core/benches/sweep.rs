// SPDX-License-Identifier: Apache-2.0

//! Sequential (one partition) against data-parallel execution for the three
//! range-shaped workloads. Build with `--no-default-features` to time the
//! fallback without rayon at all.

use std::hint::black_box;

use collatz_symbolic::exec::available_parallelism;
use collatz_symbolic::oracle::{sweep, Check};
use collatz_symbolic::prefix::{build_tree, coverage_check_with};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn modes() -> [(&'static str, usize); 2] {
    [("sequential", 1), ("parallel", available_parallelism())]
}

fn oracle_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_sweep_3_to_50001");
    g.sample_size(10);
    for (name, parts) in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &parts, |b, &parts| {
            b.iter(|| black_box(sweep(3, 50_001, &Check::ALL, parts).unwrap()))
        });
    }
    g.finish();
}

fn coverage(c: &mut Criterion) {
    let mut g = c.benchmark_group("coverage_below_100000");
    g.sample_size(10);
    for (name, parts) in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &parts, |b, &parts| {
            b.iter(|| black_box(coverage_check_with(100_000, parts, 1_000_000)))
        });
    }
    g.finish();
}

fn tree(c: &mut Criterion) {
    // Tree construction parallelizes through rayon::join when the feature
    // is on; there is no partition knob, so this compares depths.
    let mut g = c.benchmark_group("prefix_tree");
    for depth in [8u32, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| {
            b.iter(|| black_box(build_tree(d).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, oracle_sweep, coverage, tree);
criterion_main!(benches);
