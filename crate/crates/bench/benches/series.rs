use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use glsm_core::wall_crossing::mellin_barnes::contour_integral;
use glsm_core::{
    build_givental, build_i_series, extract_lgcy_matrix, term_match, BigRational, Chamber, Complex64, Var,
};

fn chamber(s: &str) -> Chamber {
    Chamber::parse(s).unwrap()
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_i_series");
    let one = BigRational::from_integer(1.into());
    for cutoff in [1, 2, 3] {
        g.bench_with_input(BenchmarkId::new("exact", cutoff), &cutoff, |b, &n| {
            b.iter(|| build_i_series(&chamber("++-+"), black_box(&one), n).unwrap())
        });
    }
    let hbar = Complex64::new(2.0, 1.0);
    g.bench_function("complex/3", |b| {
        b.iter(|| build_i_series(&chamber("-+-+"), black_box(&hbar), 3).unwrap())
    });
    g.finish();
    c.bench_function("build_givental/2", |b| {
        b.iter(|| build_givental(&chamber("++++"), black_box(&hbar), 2).unwrap())
    });
}

fn wall_crossing(c: &mut Criterion) {
    let hbar = Complex64::new(2.0, 1.0);
    c.bench_function("term_match/++++ z", |b| {
        b.iter(|| term_match(&chamber("++++"), Var::Z, 2, black_box(hbar)).unwrap())
    });
    c.bench_function("extract_lgcy_matrix/++++ ++-+", |b| {
        b.iter(|| extract_lgcy_matrix(&chamber("++++"), &chamber("++-+"), 2, black_box(hbar)).unwrap())
    });
    c.bench_function("contour_integral/q=5", |b| {
        b.iter(|| contour_integral(black_box(Complex64::new(5.0, 0.0)), 1.0 / 3.0, 1e-12).unwrap())
    });
}

criterion_group!(benches, series, wall_crossing);
criterion_main!(benches);
