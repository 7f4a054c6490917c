use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use spin_tqft::constructors::{matrix_algebra, standard_grading, GradingKind, Ring, Weight};
use spin_tqft::crossings::{check_axioms, CrossingMap};
use spin_tqft::evaluator::{naive_partition, SpinModel};
use spin_tqft::surfaces::{SpinStructure, Triangulation};
use spin_tqft::Scalar;

fn state_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("naive_partition");
    for (ring, label, n) in [(Ring::C, "C", 2), (Ring::HR, "H_R", 1), (Ring::C, "C", 3), (Ring::HR, "H_R", 2)] {
        let alg = matrix_algebra(n, ring, &Weight::Fhk, None).unwrap();
        for genus in [1, 3] {
            let tri = Triangulation::polygon(genus);
            let id = format!("M_{n}({label}) g={genus}");
            group.bench_with_input(BenchmarkId::from_parameter(id), &tri, |b, tri| {
                b.iter(|| naive_partition(&alg, black_box(tri), None).unwrap())
            });
        }
    }
    group.finish();
}

fn spin_routes(c: &mut Criterion) {
    let base = matrix_algebra(2, Ring::HR, &Weight::Fhk, Some(Scalar::new(1.0, 0.0))).unwrap();
    let graded = standard_grading(&base, &GradingKind::KleinQuaternionic { n: 2 }).unwrap();
    let cr = CrossingMap::from_bicharacter(&graded.grading, &graded.bicharacters[7]).unwrap();
    let alg = &graded.algebra;

    c.bench_function("check_axioms d=16", |b| b.iter(|| check_axioms(alg, black_box(&cr), 1e-9)));
    c.bench_function("spin model d=16", |b| b.iter(|| SpinModel::new(alg, black_box(&cr), 1e-9).unwrap()));

    let model = SpinModel::new(alg, &cr, 1e-9).unwrap();
    let mut group = c.benchmark_group("spin partition d=16");
    for genus in [1, 3] {
        let s = SpinStructure::with_parity(genus, -1).unwrap();
        group.bench_with_input(BenchmarkId::new("handles", genus), &genus, |b, &g| b.iter(|| model.partition(g, -1).unwrap()));
        group.bench_with_input(BenchmarkId::new("diagram", genus), &s, |b, s| b.iter(|| model.partition_direct(s).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, state_sums, spin_routes);
criterion_main!(benches);
