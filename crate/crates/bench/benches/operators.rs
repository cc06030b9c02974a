use awlab_bench::{dense_input, reference_params};
use awlab_core::polynomials::NonsymmetricTable;
use awlab_core::{
    apply_D, apply_Dprime, apply_Y, askey_wilson_P, askey_wilson_P_oracle, DprimeForm,
};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn polynomials(c: &mut Criterion) {
    let p = reference_params(8);
    let mut group = c.benchmark_group("construct");
    for n in [2u32, 5, 8] {
        group.bench_with_input(BenchmarkId::new("P_sum", n), &n, |b, &n| {
            b.iter(|| askey_wilson_P(black_box(n), &p).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("P_oracle", n), &n, |b, &n| {
            b.iter(|| askey_wilson_P_oracle(black_box(n), &p).unwrap())
        });
    }
    group.bench_function("E_table_8", |b| {
        b.iter(|| {
            let t = NonsymmetricTable::new(8, &p).unwrap();
            (-8..=8).map(|n| t.e(n).unwrap()).collect::<Vec<_>>()
        })
    });
    group.finish();
}

fn operators(c: &mut Criterion) {
    let p = reference_params(8);
    let f = dense_input(6);
    let p8 = askey_wilson_P(8, &p).unwrap();
    let mut group = c.benchmark_group("apply");
    group.bench_function("D_on_P8", |b| b.iter(|| apply_D(black_box(&p8), &p).unwrap()));
    group.bench_function("Y_dense", |b| b.iter(|| apply_Y(black_box(&f), &p).unwrap()));
    group.bench_function("Dprime_direct_dense", |b| {
        b.iter(|| apply_Dprime(black_box(&f), &p, DprimeForm::Direct).unwrap())
    });
    group.bench_function("Dprime_factored_dense", |b| {
        b.iter(|| apply_Dprime(black_box(&f), &p, DprimeForm::Factored).unwrap())
    });
    group.finish();
}

criterion_group!(benches, polynomials, operators);
criterion_main!(benches);
