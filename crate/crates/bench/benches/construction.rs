use criterion::{criterion_group, criterion_main, Criterion};
use parakahler::ksymplectic::{extract_products, verify_kparakahler};
use parakahler::lowdim::classify;
use parakahler::phantom::{build_phantom, check_compatibility};
use parakahler_bench::{catalog_double, catalog_pair, normal_form_spec, scalar_family};

fn bench_double(c: &mut Criterion) {
    let (family, matrix) = catalog_pair();
    c.bench_function("check_compatibility bb_2", |b| {
        b.iter(|| check_compatibility(&family, &matrix).unwrap())
    });
    c.bench_function("build_phantom bb_2", |b| {
        b.iter(|| build_phantom(&family, &matrix).unwrap())
    });
    let big = scalar_family(8, 2);
    c.bench_function("family check n=8 k=2", |b| b.iter(|| big.check()));
}

fn bench_verification(c: &mut Criterion) {
    let data = catalog_double();
    c.bench_function("verify_kparakahler cc_3^2", |b| {
        b.iter(|| verify_kparakahler(&data).unwrap())
    });
    c.bench_function("extract_products cc_3^2", |b| {
        b.iter(|| extract_products(&data).unwrap())
    });
}

fn bench_classification(c: &mut Criterion) {
    let small = normal_form_spec(2);
    let large = normal_form_spec(8);
    c.bench_function("classify k=2", |b| b.iter(|| classify(&small).unwrap()));
    c.bench_function("classify k=8", |b| b.iter(|| classify(&large).unwrap()));
}

criterion_group!(benches, bench_double, bench_verification, bench_classification);
criterion_main!(benches);
