use criterion::{criterion_group, criterion_main, Criterion};
use equisphere::exact::rat;
use equisphere::sweep::{sweep, sweep_sequential};

fn bench_sweep(c: &mut Criterion) {
    let (from, to) = (rat(1, 10), rat(29, 10));
    let mut g = c.benchmark_group("pyramid sweep, 16 rows");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| sweep_sequential(&from, &to, 15, 8).unwrap())
    });
    g.bench_function("parallel", |b| b.iter(|| sweep(&from, &to, 15, 8).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
