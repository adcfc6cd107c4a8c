use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homlab::enumerate::graphs_up_to_iso;
use homlab::fraisse::{check_ap, ClassKind, ClassSpec};
use homlab::rado::{common_neighbour_check, BitOracle};
use homlab::sumfree::{census_with, density_experiment, DEFAULT_SEED};
use homlab::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn graph_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("graphs_up_to_iso_7");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| graphs_up_to_iso(7, exec).unwrap()));
    }
    group.finish();
}

fn sum_free_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census_36");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| census_with(36, exec).unwrap()));
    }
    group.finish();
}

fn density(c: &mut Criterion) {
    let mut group = c.benchmark_group("density_5000x2000");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| density_experiment(5_000, 2_000, DEFAULT_SEED, 0.01, exec).unwrap())
        });
    }
    group.finish();
}

fn amalgamation(c: &mut Criterion) {
    let spec = ClassSpec::new(ClassKind::KFree { k: 3 }).unwrap();
    let mut group = c.benchmark_group("ap_k3free_3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| check_ap(&spec, 3, true, exec).unwrap()));
    }
    group.finish();
}

fn extension(c: &mut Criterion) {
    let mut group = c.benchmark_group("common_neighbours_bit_3x12");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| common_neighbour_check(&BitOracle, 3, 12, 1 << 20, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(kernels, graph_enumeration, sum_free_census, density, amalgamation, extension);
criterion_main!(kernels);
