use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rankone_bench::{phi_samples, rank_one, square_on};
use rankone_core::{check_preserver, eigenvalues, fit_real_power, FitOptions, ToleranceProfile};

fn bench_eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenvalues");
    for n in [3, 5, 10, 20] {
        let m = rank_one(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| eigenvalues(black_box(m))));
    }
    group.finish();
}

fn bench_check_preserver(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_preserver");
    group.sample_size(10);
    let tol = ToleranceProfile::default();
    for n in [3, 5] {
        let (f, spec) = square_on(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| check_preserver(&f, &spec, 1, 200, 7, &tol).expect("runs"))
        });
    }
    group.finish();
}

fn bench_fit(c: &mut Criterion) {
    let s = phi_samples();
    let opts = FitOptions::default();
    c.bench_function("fit_real_power", |b| b.iter(|| fit_real_power(black_box(&s), &opts).expect("fits")));
}

criterion_group!(benches, bench_eigenvalues, bench_check_preserver, bench_fit);
criterion_main!(benches);
