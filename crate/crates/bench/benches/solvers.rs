use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ppad::reductions::{fixture_gmp, symmetrize};
use ppad::solvers::{approx_nash, lemke_howson, random_nondegenerate_bimatrix, random_normal_form, support_enumeration};

fn lemke_howson_by_size(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemke_howson");
    for n in [3usize, 5, 8] {
        let (g, _) = random_nondegenerate_bimatrix(n, n, -9, 9, 17).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| lemke_howson(black_box(g), 0).unwrap())
        });
    }
    group.finish();
}

fn support_enumeration_by_size(c: &mut Criterion) {
    let mut group = c.benchmark_group("support_enumeration");
    group.sample_size(10);
    for n in [2usize, 3, 4, 5] {
        let (g, _) = random_nondegenerate_bimatrix(n, n, -9, 9, 17).unwrap();
        group.bench_with_input(BenchmarkId::new("random", n), &g, |b, g| {
            b.iter(|| support_enumeration(black_box(g)).unwrap())
        });
    }
    let (sym, _) = symmetrize(&fixture_gmp(3).unwrap()).unwrap();
    group.bench_function("symmetrized_gmp3", |b| b.iter(|| support_enumeration(black_box(&sym)).unwrap()));
    group.finish();
}

fn approximation(c: &mut Criterion) {
    let mut group = c.benchmark_group("approx_nash");
    for k in [2usize, 3, 4] {
        let g = random_normal_form(&vec![4; k], -9, 9, 3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &g, |b, g| b.iter(|| approx_nash(black_box(g)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, lemke_howson_by_size, support_enumeration_by_size, approximation);
criterion_main!(benches);
