use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Params, RngSeed};

/// One attachment edge: edge number `slot` of vertex `newer` landed on the
/// older vertex `target`. Labels are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeTriple {
    pub newer: u32,
    pub slot: u32,
    pub target: u32,
}

impl EdgeTriple {
    pub const fn new(newer: u32, slot: u32, target: u32) -> Self {
        Self {
            newer,
            slot,
            target,
        }
    }

    /// Checks the triple can exist in a graph with `n` vertices and `m`
    /// edges per vertex. A target at or above `newer` is *not* rejected here:
    /// such triples are legal event members with probability zero.
    pub fn check_bounds(&self, n: u32, m: u32) -> Result<()> {
        let reason = if self.newer < 2 {
            "newer vertex must be at least 2"
        } else if self.newer > n {
            "newer vertex exceeds n"
        } else if self.slot < 1 || self.slot > m {
            "slot outside 1..=m"
        } else if self.target < 1 {
            "target must be at least 1"
        } else {
            return Ok(());
        };
        Err(self.invalid(reason))
    }

    pub(crate) fn invalid(&self, reason: &'static str) -> Error {
        Error::InvalidTriple {
            newer: self.newer as u64,
            slot: self.slot as u64,
            target: self.target as u64,
            reason,
        }
    }

    /// Whether vertex `s` lies strictly between the endpoints.
    pub fn spans(&self, s: u32) -> bool {
        self.target < s && s < self.newer
    }
}

/// Frozen preferential attachment multigraph.
///
/// Out-edges are stored as one target per `(newer, slot)` in generation
/// order; the first `m` entries are the initial parallel edges between
/// `v_1` and `v_2`. Adjacency is an offset array into a flat neighbor list,
/// indexed by `label - 1`, with multi-edges kept.
#[derive(Clone, Debug, PartialEq)]
pub struct PAGraph {
    n: u32,
    params: Params,
    seed: RngSeed,
    targets: Vec<u32>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl PAGraph {
    /// Builds a graph from its target sequence, where entry `(t - 2) * m +
    /// (i - 1)` is the target label of edge `i` of vertex `t`.
    pub(crate) fn from_targets(
        n: u32,
        params: Params,
        seed: RngSeed,
        targets: Vec<u32>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n as u64));
        }
        let m = params.m() as usize;
        let expected = (n as usize - 1) * m;
        if targets.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "expected {expected} edges for n = {n}, m = {m}, got {}",
                targets.len()
            )));
        }
        for (k, &target) in targets.iter().enumerate() {
            let newer = (k / m) as u32 + 2;
            let slot = (k % m) as u32 + 1;
            let triple = EdgeTriple::new(newer, slot, target);
            if target < 1 || target >= newer {
                return Err(triple.invalid("target must be an older vertex"));
            }
        }

        let nn = n as usize;
        let mut offsets = vec![0usize; nn + 1];
        for (k, &target) in targets.iter().enumerate() {
            let newer = k / m + 1;
            offsets[newer + 1] += 1;
            offsets[target as usize] += 1;
        }
        for v in 0..nn {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0u32; offsets[nn]];
        for (k, &target) in targets.iter().enumerate() {
            let newer = k / m + 1;
            let target = target as usize - 1;
            neighbors[fill[newer]] = target as u32;
            fill[newer] += 1;
            neighbors[fill[target]] = newer as u32;
            fill[target] += 1;
        }

        Ok(Self {
            n,
            params,
            seed,
            targets,
            offsets,
            neighbors,
        })
    }

    /// Rebuilds a graph from a full triple list in generation order.
    pub fn from_triples(
        n: u32,
        params: Params,
        seed: RngSeed,
        triples: &[EdgeTriple],
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n as u64));
        }
        let m = params.m();
        let mut targets = Vec::with_capacity(triples.len());
        for (k, triple) in triples.iter().enumerate() {
            let newer = (k as u64 / m as u64) as u32 + 2;
            let slot = (k as u64 % m as u64) as u32 + 1;
            if triple.newer != newer || triple.slot != slot {
                return Err(triple.invalid("triples out of generation order"));
            }
            if triple.newer == 2 && triple.target != 1 {
                return Err(triple.invalid("initial edges must join v1 and v2"));
            }
            targets.push(triple.target);
        }
        Self::from_targets(n, params, seed, targets)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.params.m()
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn seed(&self) -> RngSeed {
        self.seed
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    /// All edges in generation order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeTriple> + '_ {
        let m = self.m() as usize;
        self.targets.iter().enumerate().map(move |(k, &target)| {
            EdgeTriple::new((k / m) as u32 + 2, (k % m) as u32 + 1, target)
        })
    }

    /// Targets of the out-edges of `v`, ordered by slot. Empty for `v_1`.
    pub fn out_targets(&self, v: u32) -> Result<&[u32]> {
        let idx = self.index(v)?;
        Ok(self.out_targets_idx(idx))
    }

    /// Labels of all neighbors of `v`, with multiplicity.
    pub fn neighbors(&self, v: u32) -> Result<impl Iterator<Item = u32> + '_> {
        let idx = self.index(v)?;
        Ok(self.adj(idx).iter().map(|&u| u + 1))
    }

    /// Degree `D_v(n)` counting parallel edges.
    pub fn degree(&self, v: u32) -> Result<u32> {
        let idx = self.index(v)?;
        Ok(self.adj(idx).len() as u32)
    }

    /// Degrees indexed by `label - 1`.
    pub fn degrees(&self) -> Vec<u32> {
        self.offsets.windows(2).map(|w| (w[1] - w[0]) as u32).collect()
    }

    /// Converts a 1-based label into an internal index.
    pub fn index(&self, v: u32) -> Result<usize> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange {
                label: v as u64,
                n: self.n,
            });
        }
        Ok(v as usize - 1)
    }

    #[inline]
    pub(crate) fn adj(&self, idx: usize) -> &[u32] {
        &self.neighbors[self.offsets[idx]..self.offsets[idx + 1]]
    }

    /// Out-targets of the vertex with index `idx`, as labels.
    #[inline]
    pub(crate) fn out_targets_idx(&self, idx: usize) -> &[u32] {
        if idx == 0 {
            return &[];
        }
        let m = self.m() as usize;
        &self.targets[(idx - 1) * m..idx * m]
    }
}
