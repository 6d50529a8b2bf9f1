use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::PAGraph;
use crate::params::{Params, RngSeed};

/// How attachment targets are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Sampler {
    /// Mixture for `delta >= 0`, Fenwick tree otherwise.
    #[default]
    Auto,
    /// Degree-proportional endpoint draw mixed with a uniform vertex draw.
    /// Only valid for `delta >= 0`.
    Mixture,
    /// Inverse CDF over a Fenwick tree of weights `degree + delta`.
    Fenwick,
}

/// Generates a graph on `n` vertices with the default sampler.
pub fn generate(n: u32, params: Params, seed: RngSeed) -> Result<PAGraph> {
    generate_with(n, params, seed, Sampler::Auto)
}

pub fn generate_with(n: u32, params: Params, seed: RngSeed, sampler: Sampler) -> Result<PAGraph> {
    if n < 2 {
        return Err(Error::TooFewVertices(n as u64));
    }
    let sampler = match sampler {
        Sampler::Auto if params.delta() >= 0.0 => Sampler::Mixture,
        Sampler::Auto => Sampler::Fenwick,
        Sampler::Mixture if params.delta() < 0.0 => {
            return Err(Error::InvalidArgument(
                "mixture sampler requires delta >= 0".into(),
            ))
        }
        s => s,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let m = params.m() as usize;
    let num_edges = (n as usize - 1)
        .checked_mul(m)
        .filter(|&e| e <= u32::MAX as usize)
        .ok_or(Error::TooManyVertices(n as u64))?;
    let mut targets = Vec::with_capacity(num_edges);
    targets.resize(m, 1);
    match sampler {
        Sampler::Mixture => attach_mixture(n, params, &mut rng, &mut targets),
        Sampler::Fenwick => attach_fenwick(n, params, &mut rng, &mut targets),
        Sampler::Auto => unreachable!(),
    }
    PAGraph::from_targets(n, params, seed, targets)
}

fn attach_mixture(n: u32, params: Params, rng: &mut impl Rng, targets: &mut Vec<u32>) {
    let m = params.m() as usize;
    let delta = params.delta();
    // one entry per edge endpoint at a vertex older than the current one
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * m * (n as usize - 1));
    endpoints.extend(std::iter::repeat_n(1, m));
    endpoints.extend(std::iter::repeat_n(2, m));

    for t in 3..=n {
        for slot in 1..=m as u32 {
            let mass = endpoints.len();
            debug_assert_eq!(mass as f64 + (t - 1) as f64 * delta, params.attachment_normalizer(t, slot));
            let uniform_mass = (t - 1) as f64 * delta;
            let from_degree =
                delta == 0.0 || rng.random::<f64>() * (mass as f64 + uniform_mass) < mass as f64;
            let target = if from_degree {
                endpoints[rng.random_range(0..mass)]
            } else {
                rng.random_range(1..t)
            };
            endpoints.push(target);
            targets.push(target);
        }
        endpoints.extend(std::iter::repeat_n(t, m));
    }
}

fn attach_fenwick(n: u32, params: Params, rng: &mut impl Rng, targets: &mut Vec<u32>) {
    let m = params.m();
    let mut weights = FenwickTree::new(n as usize);
    weights.add(0, params.base_weight());
    weights.add(1, params.base_weight());

    for t in 3..=n {
        let mut total = params.attachment_normalizer(t, 1);
        for _ in 0..m {
            let u = rng.random::<f64>() * total;
            // rounding can push u past the last candidate
            let idx = weights.search(u).min(t as usize - 2);
            weights.add(idx, 1.0);
            total += 1.0;
            targets.push(idx as u32 + 1);
        }
        weights.add(t as usize - 1, params.base_weight());
    }
}

/// Binary indexed tree over nonnegative `f64` weights.
#[derive(Clone, Debug)]
pub(crate) struct FenwickTree {
    tree: Vec<f64>,
    top: usize,
}

impl FenwickTree {
    pub(crate) fn new(len: usize) -> Self {
        let top = if len == 0 { 0 } else { 1 << len.ilog2() };
        Self {
            tree: vec![0.0; len + 1],
            top,
        }
    }

    pub(crate) fn add(&mut self, idx: usize, w: f64) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] += w;
            i += i & i.wrapping_neg();
        }
    }

    #[cfg(test)]
    pub(crate) fn prefix(&self, len: usize) -> f64 {
        let mut i = len;
        let mut s = 0.0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Index of the element whose cumulative interval contains `u`: the
    /// number of leading elements with prefix sum `<= u`.
    pub(crate) fn search(&self, mut u: f64) -> usize {
        let mut pos = 0;
        let mut step = self.top;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= u {
                pos = next;
                u -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}
