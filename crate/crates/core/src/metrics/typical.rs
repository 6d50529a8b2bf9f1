use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PAGraph;
use crate::metrics::bfs::PairSearch;
use crate::params::RngSeed;
use crate::rng::TYPICAL_STREAM;

/// Summary of sampled pairwise distances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypicalStats {
    pub samples: usize,
    pub mean: f64,
    pub median: f64,
    /// Nearest-rank 90th percentile.
    pub p90: u32,
    /// Distribution-free 95% interval for the median from binomial order
    /// statistics.
    pub median_ci: (u32, u32),
    /// Raw sampled distances in draw order.
    #[serde(skip)]
    pub distances: Vec<u32>,
}

impl TypicalStats {
    pub fn from_distances(distances: Vec<u32>) -> Result<Self> {
        let k = distances.len();
        if k == 0 {
            return Err(Error::InvalidArgument("no distances sampled".into()));
        }
        let mut sorted = distances.clone();
        sorted.sort_unstable();
        let mean = sorted.iter().map(|&d| d as f64).sum::<f64>() / k as f64;
        let median = if k % 2 == 1 {
            sorted[k / 2] as f64
        } else {
            (sorted[k / 2 - 1] as f64 + sorted[k / 2] as f64) / 2.0
        };
        let rank = ((0.9 * k as f64).ceil() as usize).clamp(1, k);
        let half_width = 1.96 * (k as f64).sqrt() / 2.0;
        let lo = ((k as f64 / 2.0 - half_width).floor().max(0.0) as usize).min(k - 1);
        let hi = ((k as f64 / 2.0 + half_width).ceil() as usize).min(k - 1);
        Ok(Self {
            samples: k,
            mean,
            median,
            p90: sorted[rank - 1],
            median_ci: (sorted[lo], sorted[hi]),
            distances,
        })
    }
}

/// Distances between `num_pairs` independent, uniformly drawn ordered pairs
/// (with replacement; `u = v` contributes 0).
pub fn typical_distance(g: &PAGraph, num_pairs: usize, seed: RngSeed) -> Result<TypicalStats> {
    if num_pairs == 0 {
        return Err(Error::InvalidArgument("num_pairs must be at least 1".into()));
    }
    let n = g.n() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(TYPICAL_STREAM);
    let mut search = PairSearch::new(n);
    let distances = (0..num_pairs)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            search.distance(g, u, v)
        })
        .collect();
    TypicalStats::from_distances(distances)
}
