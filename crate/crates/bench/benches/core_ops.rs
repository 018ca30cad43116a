use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use enriques::{
    arnold, dominates, enumerate_diagrams, enumerate_types, linear_adjacent, parse_weighted,
    serialize_weighted, ArnoldFamily,
};

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_diagrams_6", |b| {
        b.iter(|| enumerate_diagrams(black_box(6)).unwrap().len())
    });
    c.bench_function("enumerate_types_10", |b| {
        b.iter(|| enumerate_types(black_box(10)).unwrap().len())
    });
}

fn bench_weights(c: &mut Criterion) {
    let a12 = arnold(ArnoldFamily::A, 12).unwrap().diagram;
    c.bench_function("weighted_canonical_code_a12", |b| {
        b.iter(|| black_box(&a12).canonical_code())
    });
    let inconsistent = parse_weighted("v r - m=1\nv a r m=3\nv b a m=5\nv c b m=7\n").unwrap();
    c.bench_function("unload_steep_chain", |b| {
        b.iter(|| black_box(&inconsistent).unload().unwrap().steps.len())
    });
}

fn bench_adjacency(c: &mut Criterion) {
    let d4 = arnold(ArnoldFamily::D, 4).unwrap().diagram;
    let a3 = arnold(ArnoldFamily::A, 3).unwrap().diagram;
    c.bench_function("linear_adjacent_d4_a3", |b| {
        b.iter(|| linear_adjacent(black_box(&d4), black_box(&a3)).unwrap().is_linear())
    });
    let a9 = arnold(ArnoldFamily::A, 9).unwrap().diagram;
    let a8 = arnold(ArnoldFamily::A, 8).unwrap().diagram;
    c.bench_function("linear_adjacent_a9_a8", |b| {
        b.iter(|| linear_adjacent(black_box(&a9), black_box(&a8)).unwrap().is_linear())
    });
    c.bench_function("dominates_a9_a8", |b| {
        b.iter(|| dominates(black_box(&a9), black_box(&a8)).unwrap().is_some())
    });
}

fn bench_format(c: &mut Criterion) {
    let e8 = arnold(ArnoldFamily::E, 8).unwrap().diagram;
    let text = serialize_weighted(&e8);
    c.bench_function("serialize_parse_e8", |b| {
        b.iter(|| parse_weighted(&serialize_weighted(black_box(&e8))).unwrap())
    });
    c.bench_function("parse_e8", |b| b.iter(|| parse_weighted(black_box(&text)).unwrap()));
}

criterion_group!(benches, bench_enumeration, bench_weights, bench_adjacency, bench_format);
criterion_main!(benches);
