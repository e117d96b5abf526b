use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use equigen_core::groebner::{check_g, GProblem};
use equigen_core::{Budget, LocalModel};
use std::hint::black_box;

fn genericity(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_g");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (a, b) in [(3, 4), (3, 8), (4, 6), (4, 9), (5, 7)] {
        let model = LocalModel::new(a, b).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{a}_{b}")), &model, |bench, m| {
            bench.iter(|| black_box(check_g(m, &Budget::unlimited()).unwrap()))
        });
    }
    group.finish();
}

fn single_index(c: &mut Criterion) {
    let model = LocalModel::new(4, 6).unwrap();
    let problem = GProblem::new(&model).unwrap();
    c.bench_function("check_index_4_6_i2", |bench| {
        bench.iter(|| black_box(problem.check_index(2, &Budget::unlimited()).unwrap()))
    });
}

criterion_group!(benches, genericity, single_index);
criterion_main!(benches);
