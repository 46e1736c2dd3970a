use akl_core::certify::{self, Faults};
use akl_core::family::sample_grid;
use akl_core::par::{self, Exec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn dimension_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("family_dimension");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| certify::family_dimension(black_box(exec))));
    }
    g.finish();
}

fn sigma_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sigma_criterion");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| certify::sigma_criterion(black_box(exec))));
    }
    g.finish();
}

fn group_sweep(c: &mut Criterion) {
    let faults = Faults::default();
    let mut g = c.benchmark_group("group_certificates");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| certify::group_certificates(black_box(exec), &faults))
        });
    }
    g.finish();
}

fn sampled_map(c: &mut Criterion) {
    let grid = sample_grid(40);
    let mut g = c.benchmark_group("sampled_map");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::max_f64(exec, black_box(&grid), |p| (p[0].sin() * p[1].cosh()).abs()))
        });
    }
    g.finish();
}

criterion_group!(benches, dimension_sweep, sigma_sweep, group_sweep, sampled_map);
criterion_main!(benches);
