//! Timings for the three hot operations: sequence evaluation (doubling
//! against the linear walk), bounded triple enumeration, and m-tree
//! expansion.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::{BigInt, BigUint};

use markoff_fib::k_sequences::fib;
use markoff_fib::markoff_core::{order_triple, tree_enumerate};
use markoff_fib::oracle_search::enumerate_markoff;
use markoff_fib::Triple;
use markoff_fib_bench::fib_iterative;

fn bench_fib(c: &mut Criterion) {
    let mut group = c.benchmark_group("fib");
    for n in [1_000u64, 10_000, 100_000] {
        group.bench_with_input(BenchmarkId::new("doubling", n), &n, |b, &n| {
            b.iter(|| fib(black_box(4), black_box(n)))
        });
        group.bench_with_input(BenchmarkId::new("iterative", n), &n, |b, &n| {
            b.iter(|| fib_iterative(black_box(4), black_box(n)))
        });
    }
    group.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_markoff");
    for bound in [10_000u64, 100_000, 1_000_000] {
        let m = BigInt::from(52);
        let bound_big = BigUint::from(bound);
        group.bench_with_input(BenchmarkId::from_parameter(bound), &bound, |b, _| {
            b.iter(|| enumerate_markoff(black_box(&m), black_box(&bound_big)))
        });
    }
    group.finish();
}

fn bench_tree(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree_enumerate");
    let root = order_triple(&Triple::from((4u64, 6, 72)));
    for depth in [8u64, 12, 16] {
        let cap = BigUint::from(10u8).pow(60);
        group.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| {
            b.iter(|| tree_enumerate(black_box(&root), black_box(&cap), black_box(d)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_fib, bench_enumerate, bench_tree);
criterion_main!(benches);
