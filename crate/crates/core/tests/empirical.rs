//! Empirical properties of realized graphs at moderate sizes.

use pa_diameter::asymptotics::log_nu;
use pa_diameter::metrics::max_distance_to_old_set;
use pa_diameter::{
    generate, neighborhood_profile, typical_distance, typical_vertex_fraction, Params, RngSeed,
};

fn params() -> Params {
    Params::new(2, 1.0).unwrap()
}

#[test]
fn typical_median_ratio_at_2_pow_20() {
    let n = 1u32 << 20;
    let g = generate(n, params(), RngSeed(20)).unwrap();
    let stats = typical_distance(&g, 10_000, RngSeed(20)).unwrap();
    let ratio = stats.median / log_nu(n as f64, params()).unwrap();
    assert!((0.6..=1.4).contains(&ratio), "median {} ratio {ratio:.3}", stats.median);
}

#[test]
fn ascendant_shells_grow_at_most_m_fold() {
    let n = 1000;
    for seed in 0..5 {
        let g = generate(n, params(), RngSeed(seed)).unwrap();
        let prof = neighborhood_profile(&g, n, 3).unwrap();
        for w in prof.ascendant_shells.windows(2) {
            assert!(w[1] <= 2 * w[0], "{:?}", prof.ascendant_shells);
        }
    }
}

#[test]
fn young_vertices_are_close_to_old_ones() {
    let n = 100_000u32;
    let ln = (n as f64).ln();
    let k_n = (n as f64 / ln).ceil() as u32;
    let cutoff = n - 2 * k_n;
    let bound = 3.0 * ln.powf(2.0 / 3.0);
    for seed in 0..3 {
        let g = generate(n, params(), RngSeed(seed)).unwrap();
        let (max, _) = max_distance_to_old_set(&g, cutoff).unwrap();
        assert!((max as f64) <= bound, "seed {seed}: {max} > {bound:.2}");
    }
}

#[test]
fn many_typical_vertices() {
    let n = 100_000u32;
    let ln = (n as f64).ln();
    let cutoff = n - 2 * (n as f64 / ln).ceil() as u32;
    let radius = log_nu(n as f64, params()).unwrap().ceil() as u32;
    let g = generate(n, params(), RngSeed(7)).unwrap();
    let f = typical_vertex_fraction(&g, radius, cutoff, 200, RngSeed(7)).unwrap();
    assert!(f >= 0.1, "fraction {f}");
}
