//! Affine preferential attachment graphs.
//!
//! Vertex `t >= 3` sends `m` edges to older vertices, one at a time, each
//! landing on `v_k` with probability proportional to `degree(v_k) + delta`
//! (degrees updated after every edge, the new vertex itself excluded). The
//! crate generates such graphs exactly, evaluates exact probabilities of edge
//! sets, measures distances, and runs reproducible scaling experiments that
//! compare measured diameters and typical distances with their predicted
//! leading-order growth.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod params;
pub mod rng;

pub use asymptotics::{growth_rate_nu, predicted_diameter, theta_root, Regime, RegimePrediction};
pub use error::{Error, Result};
pub use exact::{
    bound_conditional, conditional_probability, edge_set_probability, falling_factorial,
    ln_edge_set_probability, EdgeEvent, ShellCounts,
};
pub use generate::{generate, generate_with, Sampler};
pub use graph::{EdgeTriple, PAGraph};
pub use harness::{run_plan, typical_vertex_fraction, ExperimentPlan, ExperimentRow};
pub use metrics::{
    bfs, diameter_exact, distance_to_old_set, min_neighborhood_size, neighborhood_profile,
    typical_distance, DistanceReport, GrowthProfile,
};
pub use oracle::{enumerate_distribution, ExactDistribution};
pub use params::{validate_params, Params, RngSeed};
