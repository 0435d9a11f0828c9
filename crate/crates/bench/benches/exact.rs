use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cocert_bench::dense_matrix;
use cocert_core::exactlin::smith_normal_form;
use cocert_core::malnorm::malnormal_scan;
use cocert_core::Registry;

fn det_and_charpoly(c: &mut Criterion) {
    let m = dense_matrix(8, 3);
    c.bench_function("det_bareiss_8x8", |b| b.iter(|| black_box(&m).det()));
    c.bench_function("char_poly_8x8", |b| b.iter(|| black_box(&m).char_poly()));
}

fn snf(c: &mut Criterion) {
    let m = dense_matrix(8, 5);
    c.bench_function("smith_normal_form_8x8", |b| {
        b.iter(|| smith_normal_form(black_box(&m)))
    });
}

fn scan(c: &mut Criterion) {
    let pair = Registry::bundled().build_example("gl4-x4px1").unwrap();
    let mut group = c.benchmark_group("malnormal_scan");
    group.sample_size(10);
    group.bench_function("gl4_radius_2", |b| b.iter(|| malnormal_scan(black_box(&pair), 2, 20)));
    group.finish();
}

criterion_group!(benches, det_and_charpoly, snf, scan);
criterion_main!(benches);
