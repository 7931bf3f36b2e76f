use criterion::{black_box, criterion_group, criterion_main, Criterion};
use curcoh_core::affine::{affinize, enumerate_wa1};
use curcoh_core::cecohoml::{BlockComplex, Variant};
use curcoh_core::cyclic::hc1_cutoff;
use curcoh_bench::sample_matrix;
use curcoh_core::exactmat::{q, rank};
use curcoh_core::{build_gis_adapted, build_gtp_s, ModuleRep, RootSystem};

fn bench_rank(c: &mut Criterion) {
    let m = sample_matrix(40);
    c.bench_function("rank 40x40", |b| b.iter(|| rank(black_box(&m))));
}

fn bench_blocks(c: &mut Criterion) {
    let a1 = RootSystem::from_label("A1").unwrap();
    let a2 = RootSystem::from_label("A2").unwrap();
    let gtp = build_gtp_s(&a2, 3).unwrap();
    let gis = build_gis_adapted(&a1, &[q(0), q(1)], 3).unwrap();
    c.bench_function("blocks H^2 gtp_3(A2)", |b| {
        b.iter(|| BlockComplex::build(&gtp, &ModuleRep::trivial(&gtp), Variant::Cohomology, 2, 2).unwrap())
    });
    c.bench_function("blocks H^2 gIs_3(A1)", |b| {
        b.iter(|| BlockComplex::build(&gis, &ModuleRep::trivial(&gis), Variant::Cohomology, 2, 2).unwrap())
    });
}

fn bench_hc1(c: &mut Criterion) {
    c.bench_function("hc1 cutoff 12", |b| b.iter(|| hc1_cutoff(&[q(0), q(1)], black_box(12)).unwrap()));
}

fn bench_affine(c: &mut Criterion) {
    let e8 = affinize(&RootSystem::from_label("E8").unwrap());
    c.bench_function("W_a^1 E8 length 4", |b| b.iter(|| enumerate_wa1(&e8, black_box(4)).unwrap()));
}

criterion_group!(benches, bench_rank, bench_blocks, bench_hc1, bench_affine);
criterion_main!(benches);
