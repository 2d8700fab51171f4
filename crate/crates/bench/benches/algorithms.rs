use std::hint::black_box;

use bstable::gfq::make_tower;
use bstable::limitchar::{truncate, SymbolicCharacter};
use bstable::rank1lab::{build_induced, socle_and_head, Gate};
use bstable::rootdata::{weyl_group, RootDatum};
use criterion::{criterion_group, criterion_main, Criterion};

fn field_tower(c: &mut Criterion) {
    c.bench_function("tower p=2 levels 1..3", |b| b.iter(|| make_tower(black_box(2), 3).unwrap()));
    c.bench_function("tower p=3 levels 1..3", |b| b.iter(|| make_tower(black_box(3), 3).unwrap()));
}

fn weyl(c: &mut Criterion) {
    let a3 = RootDatum::of_type("A3").unwrap();
    let b2 = RootDatum::of_type("B2").unwrap();
    c.bench_function("weyl A3", |b| b.iter(|| weyl_group(black_box(&a3)).unwrap()));
    c.bench_function("weyl B2 poincare", |b| {
        b.iter(|| weyl_group(black_box(&b2)).unwrap().poincare_polynomial())
    });
}

fn induced(c: &mut Criterion) {
    let theta = truncate(&SymbolicCharacter::rational(-1), 2, 3).unwrap();
    c.bench_function("induced p=2 level 3", |b| {
        b.iter(|| build_induced(2, 3, black_box(&theta), 3).unwrap())
    });
    let m = build_induced(2, 3, &theta, 3).unwrap();
    c.bench_function("spin highest p=2 level 3", |b| {
        b.iter(|| m.representation().spin(&m.highest()).dim())
    });
}

fn socle(c: &mut Criterion) {
    let theta = truncate(&SymbolicCharacter::rational(1), 2, 2).unwrap();
    let m = build_induced(2, 2, &theta, 2).unwrap();
    let gate = Gate::default();
    c.bench_function("socle and head p=2 level 2", |b| {
        b.iter(|| socle_and_head(black_box(&m), &gate).unwrap())
    });
}

criterion_group!(benches, field_tower, weyl, induced, socle);
criterion_main!(benches);
