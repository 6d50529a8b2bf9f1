//! Neighborhood growth: BFS shells, ascendant (older-vertex) shells, the
//! smallest ball over all vertices, and distances to the oldest vertices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PAGraph;
use crate::metrics::bfs::{Scratch, UNSEEN};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub vertex: u32,
    /// `|S_r|` of the undirected search, `r = 0..=R`.
    pub shell_sizes: Vec<usize>,
    /// `|N_r(v)|`.
    pub cumulative: Vec<usize>,
    /// Shells of the search that only follows out-edges (towards older
    /// vertices).
    pub ascendant_shells: Vec<usize>,
    /// `|N_r^down(v)|`.
    pub ascendant_sizes: Vec<usize>,
}

fn running_sum(xs: &[usize]) -> Vec<usize> {
    xs.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

pub fn neighborhood_profile(g: &PAGraph, v: u32, radius: u32) -> Result<GrowthProfile> {
    let src = g.index(v)?;
    let mut scratch = Scratch::new(g.n() as usize);
    let shell_sizes = scratch.shells(g, src, radius, false);
    let ascendant_shells = scratch.shells(g, src, radius, true);
    Ok(GrowthProfile {
        vertex: v,
        cumulative: running_sum(&shell_sizes),
        ascendant_sizes: running_sum(&ascendant_shells),
        shell_sizes,
        ascendant_shells,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinNeighborhood {
    /// `min_v min(|N_R(v)|, threshold)`.
    pub size: usize,
    /// Smallest label attaining the minimum.
    pub vertex: u32,
    /// Vertices whose ball had to be searched directly.
    pub direct_searches: usize,
}

/// Number of high-degree vertices whose ball radius is used to certify
/// other vertices without a search of their own.
const ANCHORS: usize = 32;

/// Smallest `R`-ball over all vertices, each ball capped at `threshold`.
///
/// If `|N_r(a)| >= threshold` for an anchor `a`, every vertex within
/// `R - r` of `a` also has a ball of at least `threshold`; those vertices
/// are certified by one multi-source search and only the rest are searched
/// individually, stopping as soon as the threshold is reached.
pub fn min_neighborhood_size(g: &PAGraph, radius: u32, threshold: usize) -> MinNeighborhood {
    let n = g.n() as usize;
    let mut scratch = Scratch::new(n);

    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    let mut starts: Vec<Vec<usize>> = vec![Vec::new(); radius as usize + 1];
    for &a in order.iter().take(ANCHORS) {
        if let Some(r) = scratch.ball(g, a, radius, threshold, n).limit_depth {
            starts[r as usize].push(a);
        }
    }

    let mut level = vec![UNSEEN; n];
    let mut frontier: Vec<usize> = Vec::new();
    for r in 0..=radius {
        for &a in &starts[r as usize] {
            if level[a] == UNSEEN {
                level[a] = r;
                frontier.push(a);
            }
        }
        if r == radius {
            break;
        }
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in g.adj(x) {
                let y = y as usize;
                if level[y] == UNSEEN {
                    level[y] = r + 1;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }

    let pending: Vec<usize> = (0..n).filter(|&v| level[v] == UNSEEN).collect();
    let searched = pending
        .par_iter()
        .map_init(
            || Scratch::new(n),
            |s, &v| (s.ball(g, v, radius, threshold, n).size, v),
        )
        .min();
    // every certified vertex reports the threshold
    let certified = (0..n).find(|&v| level[v] != UNSEEN).map(|v| (threshold, v));
    let (size, v) = searched
        .into_iter()
        .chain(certified)
        .min()
        .expect("graph has vertices");
    let vertex = v as u32 + 1;
    MinNeighborhood {
        size,
        vertex,
        direct_searches: pending.len(),
    }
}

fn check_cutoff(g: &PAGraph, cutoff: u32) -> Result<()> {
    if cutoff < 1 || cutoff > g.n() {
        return Err(Error::InvalidArgument(format!(
            "cutoff label must be in 1..={}, got {cutoff}",
            g.n()
        )));
    }
    Ok(())
}

/// Hop distance from `v` to the nearest vertex with label `<= cutoff`.
pub fn distance_to_old_set(g: &PAGraph, v: u32, cutoff: u32) -> Result<u32> {
    let src = g.index(v)?;
    check_cutoff(g, cutoff)?;
    Ok(Scratch::new(g.n() as usize).distance_to_prefix(g, src, cutoff as usize))
}

/// Largest distance to the set of labels `<= cutoff`, with the smallest
/// label attaining it.
pub fn max_distance_to_old_set(g: &PAGraph, cutoff: u32) -> Result<(u32, u32)> {
    check_cutoff(g, cutoff)?;
    let n = g.n() as usize;
    let mut dist = vec![UNSEEN; n];
    let mut queue: Vec<u32> = (0..cutoff).collect();
    for &x in &queue {
        dist[x as usize] = 0;
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head] as usize;
        head += 1;
        for &y in g.adj(x) {
            if dist[y as usize] == UNSEEN {
                dist[y as usize] = dist[x] + 1;
                queue.push(y);
            }
        }
    }
    let max = dist.iter().copied().max().unwrap_or(0);
    let argmax = dist.iter().position(|&d| d == max).unwrap_or(0);
    Ok((max, argmax as u32 + 1))
}
