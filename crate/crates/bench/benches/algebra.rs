use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dtl_core::bar::{bar_tor, IdealProducts};
use dtl_core::coeff::{Integers, PrimeField};
use dtl_core::mv::{tor_from_resolution, verify_acyclic, Resolution};
use dtl_core::{enumerate_basis, Basis, MultTable};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_basis");
    for n in [3, 4, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| enumerate_basis(black_box(n))));
    }
    g.finish();
}

fn multiplication(c: &mut Criterion) {
    let basis = enumerate_basis(4);
    c.bench_function("multiply_all_pairs_n4", |b| {
        b.iter(|| {
            let mut loops = 0u32;
            for x in &basis[..64] {
                for y in &basis {
                    loops += x.multiply(y).unwrap().loops().unwrap_or(0);
                }
            }
            loops
        })
    });
    c.bench_function("mult_table_n3", |b| b.iter(|| MultTable::new(Basis::new(3)).unwrap()));
}

fn resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolution");
    g.sample_size(10);
    for n in [3, 4] {
        g.bench_with_input(BenchmarkId::new("build", n), &n, |b, &n| b.iter(|| Resolution::new(n).unwrap()));
    }
    let res = Resolution::new(4).unwrap();
    g.bench_function("acyclic_z_n4", |b| b.iter(|| verify_acyclic(&res.complex, &Integers::new(2)).unwrap()));
    let f2 = PrimeField::new(2, 0).unwrap();
    g.bench_function("tor_f2_n4", |b| b.iter(|| tor_from_resolution(&res.complex, &res.action, &f2).unwrap()));
    g.finish();
}

fn bar(c: &mut Criterion) {
    let mut g = c.benchmark_group("bar_tor");
    g.sample_size(10);
    let products = IdealProducts::dilute(2).unwrap();
    let f2 = PrimeField::new(2, 0).unwrap();
    g.bench_function("n2_f2_degree3", |b| b.iter(|| bar_tor(&products, &f2, 3).unwrap()));
    g.finish();
}

criterion_group!(benches, enumeration, multiplication, resolution, bar);
criterion_main!(benches);
