use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pa_diameter::{diameter_exact, min_neighborhood_size, typical_distance, RngSeed};
use pa_diameter_bench::fixture;

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("distances");
    group.sample_size(10);
    for &n in &[1u32 << 12, 1 << 15] {
        let g = fixture(n, 2, 1.0);
        group.bench_with_input(BenchmarkId::new("diameter_exact", n), &g, |b, g| {
            b.iter(|| diameter_exact(g))
        });
        group.bench_with_input(BenchmarkId::new("typical_1000_pairs", n), &g, |b, g| {
            b.iter(|| typical_distance(g, 1000, RngSeed(3)).unwrap())
        });
        let ln = (n as f64).ln();
        let radius = (3.0 * ln.powf(2.0 / 3.0)).ceil() as u32;
        let threshold = ln.powi(4).ceil() as usize;
        group.bench_with_input(BenchmarkId::new("min_neighborhood", n), &g, |b, g| {
            b.iter(|| min_neighborhood_size(g, radius, threshold))
        });
    }
    group.finish();
}

criterion_group!(benches, distances);
criterion_main!(benches);
