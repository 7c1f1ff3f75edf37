use criterion::{criterion_group, criterion_main, Criterion};
use robin_core::corpus::random_convex_polygon;
use robin_core::dearrange::{verify_chain, ChainConfig};
use robin_core::exec;
use std::hint::black_box;

fn sweep(c: &mut Criterion) {
    let config = ChainConfig { fem_levels: 2, samples: 40, ..ChainConfig::default() };
    let jobs: Vec<_> = (1..=8u64)
        .map(|seed| random_convex_polygon(seed, 12).unwrap())
        .flat_map(|p| [-0.5, -5.0].map(move |a| (p.clone(), a)))
        .collect();
    let run = |job: &(_, f64)| verify_chain(&job.0, job.1, &config).unwrap().margin_star;

    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| exec::map(black_box(&jobs), run)));
    group.bench_function("sequential", |b| b.iter(|| exec::map_sequential(black_box(&jobs), run)));
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
