use criterion::{criterion_group, criterion_main, Criterion};
use qbelt::counting::{all_n_vectors, count, dominant_weights, PositivityConvention};
use qbelt::{CartanData, DynkinType};

fn bench_counting(c: &mut Criterion) {
    let cartan = CartanData::new(DynkinType::parse("A2").unwrap());
    let vectors = all_n_vectors(2, 5);
    c.bench_function("mn_sweep_a2_w5", |b| {
        b.iter(|| {
            for n in &vectors {
                for lambda in dominant_weights(&cartan, n) {
                    let report =
                        count(&cartan, n, &lambda, PositivityConvention::Support).unwrap();
                    assert_eq!(report.m_sum, report.n_sum);
                }
            }
        })
    });
}

criterion_group!(benches, bench_counting);
criterion_main!(benches);
