use std::hint::black_box;

use annmod::classify::is_annihilator_multiplication;
use annmod::finmod::enumerate_submodules;
use annmod::polymod::check_lempol;
use annmod::propcheck::{generate_instances, run_property, InstanceBudget, RunOptions};
use annmod_bench::{build, fixtures};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn ann_mult(c: &mut Criterion) {
    let mut group = c.benchmark_group("ann_mult");
    for (label, e) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &e, |b, e| {
            b.iter(|| is_annihilator_multiplication(black_box(e)))
        });
    }
    group.finish();
}

fn submodules(c: &mut Criterion) {
    let mut group = c.benchmark_group("submodules");
    // Z12 ⊕ Z12 is past the enumeration cap, so it is left out
    for (label, e) in fixtures().into_iter().filter(|(l, _)| *l != "z12_squared") {
        group.bench_with_input(BenchmarkId::from_parameter(label), &e, |b, e| {
            b.iter(|| enumerate_submodules(black_box(e)).unwrap())
        });
    }
    group.finish();
}

fn lempol(c: &mut Criterion) {
    let e = build("(self (Z 4))");
    c.bench_function("lempol_z4_degree_2", |b| {
        b.iter(|| check_lempol(black_box(&e), 2).unwrap())
    });
}

fn suite_slice(c: &mut Criterion) {
    let budget = InstanceBudget {
        max_instances: 40,
        ..InstanceBudget::default()
    };
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("generate_40", |b| {
        b.iter(|| generate_instances(black_box(&budget)).unwrap())
    });
    let corpus = generate_instances(&budget).unwrap();
    group.bench_function("p1_on_40", |b| {
        b.iter(|| run_property("P1", black_box(&corpus), RunOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, ann_mult, submodules, lempol, suite_slice);
criterion_main!(benches);
