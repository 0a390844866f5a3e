use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use signkernel::{exact_d1, local_search_d1, objective, seesaw, Example, SeesawInit, SeesawOptions};
use signkernel_bench::rotating_pair;

fn bench_objective(c: &mut Criterion) {
    let mut group = c.benchmark_group("objective");
    for n in [64, 256, 1024] {
        let (a, g, h) = rotating_pair(Example::HalfPlane, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| objective(black_box(&a), black_box(&g), black_box(&h)).unwrap())
        });
    }
    group.finish();
}

fn bench_seesaw(c: &mut Criterion) {
    let mut group = c.benchmark_group("seesaw");
    group.sample_size(20);
    for example in [Example::HalfPlane, Example::CircleBand] {
        let a = example.kernel().discretize(256).unwrap();
        group.bench_function(format!("ex{} n=256 d=2", example.number()), |b| {
            b.iter(|| seesaw(&a, 2, SeesawInit::Seed(7), SeesawOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_d1(c: &mut Criterion) {
    let a = Example::HalfPlane.kernel().discretize(16).unwrap();
    c.bench_function("exact_d1 n=16", |b| b.iter(|| exact_d1(black_box(&a)).unwrap()));
    let a = Example::CircleBand.kernel().discretize(64).unwrap();
    c.bench_function("local_search_d1 n=64 x8", |b| {
        b.iter(|| local_search_d1(black_box(&a), 8, 1).unwrap())
    });
}

criterion_group!(benches, bench_objective, bench_seesaw, bench_d1);
criterion_main!(benches);
