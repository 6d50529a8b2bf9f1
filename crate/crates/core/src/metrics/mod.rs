//! Distances on frozen graphs. All searches treat parallel edges as one
//! connection.

mod bfs;
mod diameter;
mod growth;
mod typical;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{log_nu, Regime};
use crate::graph::PAGraph;

pub use bfs::{bfs, Distances};
pub(crate) use bfs::Scratch;
pub use diameter::{diameter_exact, diameter_exact_with_stats, diameter_lower_bound, DiameterResult};
pub use growth::{
    distance_to_old_set, max_distance_to_old_set, min_neighborhood_size, neighborhood_profile,
    GrowthProfile, MinNeighborhood,
};
pub use typical::{typical_distance, TypicalStats};

/// Statistics divided by `log_nu(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogNuRatios {
    pub log_nu_n: f64,
    pub diameter: Option<f64>,
    pub mean: f64,
    pub median: f64,
    pub p90: f64,
}

/// Distance summary of one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub n: u32,
    pub m: u32,
    pub delta: f64,
    pub seed: u64,
    pub diameter: Option<u32>,
    pub typical_samples: usize,
    pub typical_mean: f64,
    pub typical_median: f64,
    pub typical_p90: u32,
    /// Present only for `m >= 2`, `delta > 0`.
    pub ratio_to_log_nu: Option<LogNuRatios>,
}

impl DistanceReport {
    pub fn new(g: &PAGraph, diameter: Option<u32>, typical: &TypicalStats) -> Self {
        let params = g.params();
        let ratio_to_log_nu = (Regime::of(params) == Regime::PositiveDelta).then(|| {
            let l = log_nu(g.n() as f64, params).expect("regime checked");
            LogNuRatios {
                log_nu_n: l,
                diameter: diameter.map(|d| d as f64 / l),
                mean: typical.mean / l,
                median: typical.median / l,
                p90: typical.p90 as f64 / l,
            }
        });
        Self {
            n: g.n(),
            m: params.m(),
            delta: params.delta(),
            seed: g.seed().0,
            diameter,
            typical_samples: typical.samples,
            typical_mean: typical.mean,
            typical_median: typical.median,
            typical_p90: typical.p90,
            ratio_to_log_nu,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::generate;
    use crate::params::{Params, RngSeed};

    #[test]
    fn report_has_ratios_only_in_positive_regime() {
        let g = generate(500, Params::new(2, 1.0).unwrap(), RngSeed(1)).unwrap();
        let t = typical_distance(&g, 50, RngSeed(2)).unwrap();
        let r = DistanceReport::new(&g, Some(diameter_exact(&g)), &t);
        let ratios = r.ratio_to_log_nu.as_ref().unwrap();
        assert!(ratios.median <= ratios.diameter.unwrap());
        assert!(r.typical_median <= r.diameter.unwrap() as f64);

        let g = generate(500, Params::new(2, 0.0).unwrap(), RngSeed(1)).unwrap();
        let t = typical_distance(&g, 50, RngSeed(2)).unwrap();
        assert!(DistanceReport::new(&g, None, &t).ratio_to_log_nu.is_none());
    }
}
