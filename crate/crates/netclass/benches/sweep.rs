use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use netclass::gf::PrimeField;
use netclass::net::{representative, OrbitLabel};
use netclass::oracle::{full_sweep_nets, orbit_by_group, SweepMode};
use netclass::parallel::Execution;
use netclass::subspace::Grassmannian;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Auto),
];

fn sample_sweep(c: &mut Criterion) {
    let f = PrimeField::new(5).unwrap();
    let mut group = c.benchmark_group("sample_sweep_2000");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(20));
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| full_sweep_nets(&f, SweepMode::Sample { n: 2000, seed: 1 }, exec).unwrap())
        });
    }
    group.finish();
}

fn orbit_enumeration(c: &mut Criterion) {
    let f = PrimeField::new(5).unwrap();
    let g = Grassmannian::<3>::new(f);
    let start = representative(&f, OrbitLabel::VI).unwrap();
    let mut group = c.benchmark_group("orbit_by_group_VI");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(30));
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| orbit_by_group(&g, start.canonical(), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, sample_sweep, orbit_enumeration);
criterion_main!(benches);
