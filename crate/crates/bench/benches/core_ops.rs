use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use cubesum_core::{
    catalog_fixed, five_cubes_residue, one_bivariate, represent_five, search, verifier_check,
    ParamValue, Polynomial, SearchSpace,
};

fn bench_poly_mul(c: &mut Criterion) {
    let a = Polynomial::parse("8*m1^2*m2^4 - 8*m1^2*m2^2 + 2*m1^2 + 8*m1*m2^3 - 4*m1*m2 + 2*m2^2")
        .unwrap();
    c.bench_function("poly_mul_bivariate_deg6", |b| b.iter(|| black_box(&a) * black_box(&a)));
}

fn bench_cube_expansion(c: &mut Criterion) {
    let cube = Polynomial::parse("36*t^3 - 54*t^2 + 27*t + m - 4").unwrap();
    c.bench_function("poly_pow_cube_deg3", |b| b.iter(|| black_box(&cube).pow(3)));
}

fn bench_verify_symbolic(c: &mut Criterion) {
    let bivariate = one_bivariate(ParamValue::Symbolic, ParamValue::Symbolic);
    c.bench_function("verify_one_bivariate_symbolic", |b| {
        b.iter(|| verifier_check(black_box(&bivariate)))
    });
    let five = five_cubes_residue(3, ParamValue::Symbolic);
    c.bench_function("verify_five_cubes_symbolic", |b| {
        b.iter(|| verifier_check(black_box(&five)))
    });
}

fn bench_represent_five(c: &mut Criterion) {
    c.bench_function("represent_five_with_verify", |b| {
        b.iter(|| {
            let rep = represent_five(black_box(987_654));
            verifier_check(&rep).ok
        })
    });
}

fn bench_scaling(c: &mut Criterion) {
    let mahler = catalog_fixed("mahler").unwrap();
    let factor = BigInt::from(123_456_789_i64);
    c.bench_function("scale_mahler_large_factor", |b| {
        b.iter(|| black_box(&mahler).scale(black_box(&factor)))
    });
}

fn bench_search_small(c: &mut Criterion) {
    let space = SearchSpace::new(2, 4, 2, 1);
    c.bench_function("search_two_deg2_bound1", |b| {
        b.iter(|| search(black_box(&space)).unwrap().found.len())
    });
}

criterion_group!(
    benches,
    bench_poly_mul,
    bench_cube_expansion,
    bench_verify_symbolic,
    bench_represent_five,
    bench_scaling,
    bench_search_small
);
criterion_main!(benches);
