use std::hint::black_box;

use clonoid_bench::{random_functions, vee3_class};
use clonoid_core::classcomp::{gen_clonoid, GenOptions};
use clonoid_core::gf2geom::{icodim_set, support};
use clonoid_core::postlattice::{clone_closure, member};
use clonoid_core::verify::{minorant_witness, verify_si2, Si2Mode};
use clonoid_core::{Anf, BooleanFunction, CloneId, Rank};
use criterion::{criterion_group, criterion_main, Criterion};

fn functions(c: &mut Criterion) {
    let fs = random_functions(6, 64, 1);
    let args = random_functions(6, 6, 2);
    c.bench_function("compose 6-ary with 6-ary args", |b| {
        b.iter(|| fs.iter().map(|f| f.compose(black_box(&args)).unwrap()).count())
    });
    c.bench_function("anf of 6-ary functions", |b| b.iter(|| fs.iter().map(|f| Anf::of(black_box(f)).degree()).sum::<u32>()));
}

fn membership(c: &mut Criterion) {
    let fs = random_functions(5, 256, 3);
    let clones = CloneId::instantiated(6);
    c.bench_function("member over all clones, arity 5", |b| {
        b.iter(|| {
            fs.iter()
                .flat_map(|f| clones.iter().map(move |&k| member(f, k).unwrap()))
                .filter(|&m| m)
                .count()
        })
    });
    let h = BooleanFunction::threshold(7, 6).unwrap();
    c.bench_function("rank-6 separation test, arity 7", |b| {
        b.iter(|| member(black_box(&h), CloneId::U(Rank::Finite(6))).unwrap())
    });
}

fn closures(c: &mut Criterion) {
    let gens = [BooleanFunction::named("and").unwrap(), BooleanFunction::named("xor").unwrap()];
    c.bench_function("clone closure of and, xor at cap 3", |b| b.iter(|| clone_closure(black_box(&gens), 3).unwrap().len()));
    let f = vee3_class();
    c.bench_function("gen of vee_3 in (L, LambdaC) at cap 3", |b| {
        b.iter(|| gen_clonoid(black_box(&f), CloneId::L, CloneId::LambdaC, GenOptions::new(3)).unwrap().class.len())
    });
}

fn geometry(c: &mut Criterion) {
    let sets: Vec<_> = random_functions(5, 32, 4).iter().map(support).collect();
    c.bench_function("icodim of random subsets of GF(2)^5", |b| {
        b.iter(|| sets.iter().map(|s| icodim_set(black_box(s)).unwrap()).sum::<u32>())
    });
}

fn lemmas(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemmas");
    group.sample_size(10);
    group.bench_function("si2 exhaustive n=4", |b| b.iter(|| verify_si2(4, 7, Si2Mode::Exhaustive).unwrap().cases_checked));
    group.bench_function("witness search (7, 9)", |b| b.iter(|| minorant_witness(7, 9).unwrap().is_none()));
    group.finish();
}

criterion_group!(benches, functions, membership, closures, geometry, lemmas);
criterion_main!(benches);
