use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use superrough::approximation::ApproximationSpace;
use superrough::convex::build_co_lattice;
use superrough::lattice::{check_condition_with, Condition};
use superrough::par::Parallelism;
use superrough::rough::build_rough_algebra;
use superrough::super_rough::{build_super_rough, check_super_rough_axioms_with};
use superrough::sweep::lattices_up_to;

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("rayon", Parallelism::Auto)];

fn conditions(c: &mut Criterion) {
    let sample = lattices_up_to(7);
    let mut group = c.benchmark_group("conditions on lattices <= 7");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                sample
                    .iter()
                    .flat_map(|l| Condition::ALL.map(|c| check_condition_with(l, c, mode).holds))
                    .filter(|&h| h)
                    .count()
            })
        });
    }
    group.finish();
}

fn co_facts(c: &mut Criterion) {
    let co = build_co_lattice(&superrough::lattice::FiniteLattice::boolean(3), 64).unwrap();
    let mut group = c.benchmark_group("Co(2^3) facts");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| black_box(co.facts(mode)))
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let space = ApproximationSpace::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
    let built = build_super_rough(&build_rough_algebra(&space, 64).unwrap(), 16).unwrap();
    let mut group = c.benchmark_group("super rough axioms, 2+1 objects");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| check_super_rough_axioms_with(built.model(), mode).unwrap().passes())
        });
    }
    group.finish();
}

criterion_group!(benches, conditions, co_facts, axioms);
criterion_main!(benches);
