use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use elsvlab::branch::{assemble_map, branch_polynomial, normalize_lift};
use elsvlab::psi::PsiEngine;
use elsvlab::symgrp::{hurwitz_brute, hurwitz_character, CharacterBudget, EnumerationBudget};
use elsvlab_bench::{brute_profiles, character_profiles, three_pole_datum};
use std::hint::black_box;

fn brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("hurwitz_brute");
    group.sample_size(10);
    let budget = EnumerationBudget::default();
    for p in brute_profiles() {
        group.bench_with_input(BenchmarkId::from_parameter(&p), &p, |b, p| {
            b.iter(|| hurwitz_brute(black_box(p), &budget).unwrap())
        });
    }
    group.finish();
}

fn characters(c: &mut Criterion) {
    let mut group = c.benchmark_group("hurwitz_character");
    let budget = CharacterBudget::default();
    for p in character_profiles() {
        group.bench_with_input(BenchmarkId::from_parameter(&p), &p, |b, p| {
            b.iter(|| hurwitz_character(black_box(p), &budget).unwrap())
        });
    }
    group.finish();
}

fn psi(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi_cold");
    for (g, a) in [(2u32, vec![4u32]), (3, vec![2, 3, 4]), (4, vec![10, 1])] {
        group.bench_function(format!("g={g} a={a:?}"), |b| b.iter(|| PsiEngine::new().tau(g, black_box(&a))));
    }
    group.finish();
}

fn branch(c: &mut Criterion) {
    let pd = three_pole_datum();
    let f = assemble_map(&pd).unwrap();
    c.bench_function("branch_polynomial/three_poles", |b| b.iter(|| branch_polynomial(black_box(&f)).unwrap()));
    c.bench_function("normalize_lift/three_poles", |b| b.iter(|| normalize_lift(black_box(&pd)).unwrap()));
}

criterion_group!(benches, brute, characters, psi, branch);
criterion_main!(benches);
