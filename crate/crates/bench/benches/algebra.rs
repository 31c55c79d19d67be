use criterion::{criterion_group, criterion_main, Criterion};
use qbelt_bench::mul_fixture;

fn bench_algebra(c: &mut Criterion) {
    let (a, b) = mul_fixture();
    let product = a.mul(&b).unwrap();
    c.bench_function("mul_a3_q9_q8", |bench| bench.iter(|| a.mul(&b).unwrap()));
    c.bench_function("exact_div_a3", |bench| {
        bench.iter(|| product.exact_div(&b).unwrap())
    });
}

criterion_group!(benches, bench_algebra);
criterion_main!(benches);
