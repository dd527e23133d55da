use criterion::{criterion_group, criterion_main, Criterion};
use grasspoly_core::chen::QuadOptions;
use grasspoly_core::polylog::{bloch_wigner, grassmannian_tate, li2, li_n, random_tate_path};
use num_complex::Complex64;

fn special_functions(c: &mut Criterion) {
    let z = Complex64::new(0.3, 0.4);
    c.bench_function("li2 series", |b| b.iter(|| li2(z).unwrap()));
    c.bench_function("bloch-wigner", |b| b.iter(|| bloch_wigner(z).unwrap()));
    let o = QuadOptions::default();
    c.bench_function("Li3 iterated integral", |b| b.iter(|| li_n(3, z, &o).unwrap()));
}

fn tate(c: &mut Criterion) {
    let o = QuadOptions::default();
    let p2 = random_tate_path(2, 2024).unwrap();
    c.bench_function("I2 along a line", |b| b.iter(|| grassmannian_tate(2, &p2, &o).unwrap()));
    let p3 = random_tate_path(3, 2024).unwrap();
    let mut group = c.benchmark_group("tate");
    group.sample_size(10);
    group.bench_function("I3 along a line", |b| b.iter(|| grassmannian_tate(3, &p3, &o).unwrap()));
    group.finish();
}

criterion_group!(benches, special_functions, tate);
criterion_main!(benches);
