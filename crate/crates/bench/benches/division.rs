use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hkit_bench::division_workload;
use hkit_core::{compute_diagram, hironaka_divide};

fn divide(c: &mut Criterion) {
    let mut group = c.benchmark_group("hironaka_divide");
    for degree in [4, 6, 8] {
        let (f, divisors, ord) = division_workload(3, 3, degree, 1);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &degree, |b, _| {
            b.iter(|| hironaka_divide(&f, &divisors, &ord).unwrap())
        });
    }
    group.finish();
}

fn diagram(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_diagram");
    group.sample_size(20);
    for degree in [4, 6] {
        let (_, generators, ord) = division_workload(3, 3, degree, 2);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &degree, |b, &d| {
            b.iter(|| compute_diagram(&generators, &ord, d).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, divide, diagram);
criterion_main!(benches);
