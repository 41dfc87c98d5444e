use std::hint::black_box;

use b3rep::classify::classify;
use b3rep::families::{construct, FamilyId, FamilyInstance, Param};
use b3rep::field::{root_of_unity, CycloElement};
use b3rep::groebner::{verify_elimination_case, EliminationCase};
use b3rep::linalg::ExactMatrix;
use b3rep::yangbaxter::{analyze_r_matrix, RKind, RMatrixSpec};
use criterion::{criterion_group, criterion_main, Criterion};

fn dense(n: usize) -> ExactMatrix {
    let w = root_of_unity(24, 1);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = ((i * 7 + j * 3) % 11) as i64 - 5;
                    &CycloElement::from_int(24, k) + &w.pow(((i + 2 * j) % 24) as i64).unwrap()
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).unwrap()
}

fn field(c: &mut Criterion) {
    let x = &CycloElement::from_int(24, 3) + &root_of_unity(24, 5);
    let y = &CycloElement::from_int(24, -2) + &root_of_unity(24, 7);
    c.bench_function("cyclo_mul", |b| b.iter(|| black_box(&x) * black_box(&y)));
    c.bench_function("cyclo_inverse", |b| b.iter(|| black_box(&x).inv().unwrap()));
}

fn linalg(c: &mut Criterion) {
    let m = dense(8);
    c.bench_function("char_poly_8", |b| b.iter(|| black_box(&m).char_poly().unwrap()));
    c.bench_function("inverse_8", |b| b.iter(|| black_box(&m).inverse().unwrap()));
}

fn classification(c: &mut Criterion) {
    let inst = FamilyInstance::with(
        FamilyId::W1_4_1,
        &[(Param::Lambda2, CycloElement::from_int(24, 3)), (Param::Beta, CycloElement::from_int(24, -3))],
        None,
    )
    .unwrap();
    let rep = construct(&inst).unwrap();
    c.bench_function("classify_w1_4_1", |b| b.iter(|| classify(black_box(&rep)).unwrap()));
    let spec = RMatrixSpec::new(RKind::R1, CycloElement::one(24), root_of_unity(24, 4)).unwrap();
    let mut group = c.benchmark_group("yang_baxter");
    group.sample_size(10);
    group.bench_function("special_r1", |b| b.iter(|| analyze_r_matrix(black_box(&spec)).unwrap()));
    group.finish();
}

fn groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner");
    group.sample_size(10);
    group.bench_function("case_1_1", |b| b.iter(|| verify_elimination_case(black_box(EliminationCase::C1_1)).unwrap()));
    group.finish();
}

criterion_group!(benches, field, linalg, classification, groebner);
criterion_main!(benches);
