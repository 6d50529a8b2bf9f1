use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::PAGraph;
use crate::metrics::Scratch;
use crate::params::RngSeed;
use crate::rng::DIAGNOSTIC_STREAM;

/// Estimated fraction of vertices `u <= cutoff` whose ball of radius `m`
/// in the graph induced by `[1, cutoff]` holds at least `floor(n / 10)`
/// vertices. Start vertices are drawn uniformly, with replacement.
pub fn typical_vertex_fraction(
    g: &PAGraph,
    m: u32,
    cutoff: u32,
    sample_vertices: usize,
    seed: RngSeed,
) -> Result<f64> {
    if cutoff == 0 || cutoff > g.n() {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} outside 1..={}",
            g.n()
        )));
    }
    if sample_vertices == 0 {
        return Err(Error::InvalidArgument("sample_vertices must be positive".into()));
    }
    let need = (g.n() / 10) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(DIAGNOSTIC_STREAM);
    let mut scratch = Scratch::new(g.n() as usize);
    let mut hits = 0usize;
    for _ in 0..sample_vertices {
        let u = rng.random_range(0..cutoff as usize);
        if scratch.ball(g, u, m, need, cutoff as usize).size >= need {
            hits += 1;
        }
    }
    Ok(hits as f64 / sample_vertices as f64)
}
