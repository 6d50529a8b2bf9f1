use crate::error::Result;
use crate::graph::PAGraph;

pub(crate) const UNSEEN: u32 = u32::MAX;

/// Hop distances from one source, indexed by `label - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distances(pub(crate) Vec<u32>);

impl Distances {
    pub fn get(&self, v: u32) -> Option<u32> {
        self.0.get((v as usize).checked_sub(1)?).copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn eccentricity(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of vertices at each distance `0..=eccentricity`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.eccentricity() as usize + 1];
        for &d in &self.0 {
            h[d as usize] += 1;
        }
        h
    }
}

/// Exact hop distances from `source`. Parallel edges count once.
pub fn bfs(g: &PAGraph, source: u32) -> Result<Distances> {
    let src = g.index(source)?;
    let mut dist = Vec::new();
    let mut queue = Vec::new();
    full_bfs(g, src, &mut dist, &mut queue);
    Ok(Distances(dist))
}

/// Fills `dist` with distances from `src` and returns the eccentricity.
/// The graph is connected, so every entry ends up finite.
pub(crate) fn full_bfs(g: &PAGraph, src: usize, dist: &mut Vec<u32>, queue: &mut Vec<u32>) -> u32 {
    dist.clear();
    dist.resize(g.n() as usize, UNSEEN);
    queue.clear();
    dist[src] = 0;
    queue.push(src as u32);
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head] as usize;
        head += 1;
        let next = dist[x] + 1;
        for &y in g.adj(x) {
            let slot = &mut dist[y as usize];
            if *slot == UNSEEN {
                *slot = next;
                queue.push(y);
            }
        }
    }
    debug_assert_eq!(queue.len(), g.n() as usize, "graph is disconnected");
    queue.last().map_or(0, |&x| dist[x as usize])
}

/// Outcome of a truncated search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Ball {
    /// Vertices found, capped at the search limit.
    pub size: usize,
    /// Distance of the vertex that brought `size` up to the limit.
    pub limit_depth: Option<u32>,
}

/// Reusable BFS state whose reset cost is proportional to the last search.
pub(crate) struct Scratch {
    dist: Vec<u32>,
    queue: Vec<u32>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            dist: vec![UNSEEN; n],
            queue: Vec::new(),
        }
    }

    fn reset(&mut self) {
        for &x in &self.queue {
            self.dist[x as usize] = UNSEEN;
        }
        self.queue.clear();
    }

    /// Ball of radius `radius` around `src` inside the vertices with index
    /// `< bound`, stopping once `limit` vertices have been found.
    pub(crate) fn ball(
        &mut self,
        g: &PAGraph,
        src: usize,
        radius: u32,
        limit: usize,
        bound: usize,
    ) -> Ball {
        self.reset();
        if limit == 0 {
            return Ball {
                size: 0,
                limit_depth: Some(0),
            };
        }
        self.dist[src] = 0;
        self.queue.push(src as u32);
        if limit == 1 {
            return Ball {
                size: 1,
                limit_depth: Some(0),
            };
        }
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head] as usize;
            head += 1;
            let d = self.dist[x];
            if d == radius {
                break;
            }
            for &y in g.adj(x) {
                let y = y as usize;
                if y < bound && self.dist[y] == UNSEEN {
                    self.dist[y] = d + 1;
                    self.queue.push(y as u32);
                    if self.queue.len() == limit {
                        return Ball {
                            size: limit,
                            limit_depth: Some(d + 1),
                        };
                    }
                }
            }
        }
        Ball {
            size: self.queue.len(),
            limit_depth: None,
        }
    }

    /// Sizes of the BFS shells at distances `0..=radius`. When `descending`
    /// is set only edges towards older vertices (out-edges) are followed.
    pub(crate) fn shells(
        &mut self,
        g: &PAGraph,
        src: usize,
        radius: u32,
        descending: bool,
    ) -> Vec<usize> {
        self.reset();
        let mut shells = vec![0usize; radius as usize + 1];
        self.dist[src] = 0;
        self.queue.push(src as u32);
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head] as usize;
            head += 1;
            let d = self.dist[x];
            shells[d as usize] += 1;
            if d == radius {
                continue;
            }
            let mut visit = |y: usize| {
                if self.dist[y] == UNSEEN {
                    self.dist[y] = d + 1;
                    self.queue.push(y as u32);
                }
            };
            if descending {
                for &label in g.out_targets_idx(x) {
                    visit(label as usize - 1);
                }
            } else {
                for &y in g.adj(x) {
                    visit(y as usize);
                }
            }
        }
        shells
    }

    /// Distance from `src` to the nearest vertex with index `< bound`.
    pub(crate) fn distance_to_prefix(&mut self, g: &PAGraph, src: usize, bound: usize) -> u32 {
        if src < bound {
            return 0;
        }
        self.reset();
        self.dist[src] = 0;
        self.queue.push(src as u32);
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head] as usize;
            head += 1;
            let d = self.dist[x];
            for &y in g.adj(x) {
                let y = y as usize;
                if y < bound {
                    return d + 1;
                }
                if self.dist[y] == UNSEEN {
                    self.dist[y] = d + 1;
                    self.queue.push(y as u32);
                }
            }
        }
        unreachable!("vertex 1 is reachable from every vertex")
    }
}

/// Point-to-point distances by bidirectional BFS, expanding whichever
/// frontier is cheaper to scan.
pub(crate) struct PairSearch {
    stamp: [Vec<u32>; 2],
    dist: [Vec<u32>; 2],
    epoch: u32,
    frontier: [Vec<u32>; 2],
    next: Vec<u32>,
}

impl PairSearch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            stamp: [vec![0; n], vec![0; n]],
            dist: [vec![0; n], vec![0; n]],
            epoch: 0,
            frontier: [Vec::new(), Vec::new()],
            next: Vec::new(),
        }
    }

    fn frontier_cost(g: &PAGraph, frontier: &[u32]) -> usize {
        frontier.iter().map(|&x| g.adj(x as usize).len()).sum()
    }

    pub(crate) fn distance(&mut self, g: &PAGraph, u: usize, v: usize) -> u32 {
        if u == v {
            return 0;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            for s in &mut self.stamp {
                s.fill(0);
            }
            self.epoch = 1;
        }
        let epoch = self.epoch;
        for (side, src) in [u, v].into_iter().enumerate() {
            self.stamp[side][src] = epoch;
            self.dist[side][src] = 0;
            self.frontier[side].clear();
            self.frontier[side].push(src as u32);
        }
        let mut cost = [g.adj(u).len(), g.adj(v).len()];
        loop {
            let side = if cost[0] <= cost[1] { 0 } else { 1 };
            let other = 1 - side;
            let mut best = UNSEEN;
            self.next.clear();
            for &x in &self.frontier[side] {
                let dx = self.dist[side][x as usize] + 1;
                for &y in g.adj(x as usize) {
                    let y = y as usize;
                    if self.stamp[other][y] == epoch {
                        best = best.min(dx + self.dist[other][y]);
                    } else if self.stamp[side][y] != epoch {
                        self.stamp[side][y] = epoch;
                        self.dist[side][y] = dx;
                        self.next.push(y as u32);
                    }
                }
            }
            if best != UNSEEN {
                return best;
            }
            assert!(!self.next.is_empty(), "graph is disconnected");
            std::mem::swap(&mut self.frontier[side], &mut self.next);
            cost[side] = Self::frontier_cost(g, &self.frontier[side]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::generate;
    use crate::params::{Params, RngSeed};

    fn graph(n: u32, m: i64, delta: f64, seed: u64) -> PAGraph {
        generate(n, Params::new(m, delta).unwrap(), RngSeed(seed)).unwrap()
    }

    fn floyd_warshall(g: &PAGraph) -> Vec<Vec<u32>> {
        let n = g.n() as usize;
        let inf = u32::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for v in 0..n {
            d[v][v] = 0;
            for &u in g.adj(v) {
                d[v][u as usize] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d
    }

    #[test]
    fn two_vertices() {
        let g = graph(2, 2, 0.0, 0);
        assert_eq!(bfs(&g, 1).unwrap().as_slice(), &[0, 1]);
        assert_eq!(bfs(&g, 2).unwrap().get(2), Some(0));
        assert!(bfs(&g, 3).is_err());
    }

    #[test]
    fn matches_floyd_warshall() {
        for (n, m, delta) in [(4, 1, 0.0), (4, 2, 1.0), (30, 1, 0.5), (60, 2, -1.0), (45, 3, 2.0)] {
            for seed in 0..5 {
                let g = graph(n, m, delta, seed);
                let fw = floyd_warshall(&g);
                let mut pairs = PairSearch::new(n as usize);
                for s in 1..=n {
                    let d = bfs(&g, s).unwrap();
                    assert_eq!(d.as_slice(), &fw[s as usize - 1][..]);
                    for t in 0..n as usize {
                        assert_eq!(pairs.distance(&g, s as usize - 1, t), fw[s as usize - 1][t]);
                    }
                }
            }
        }
    }

    #[test]
    fn ball_respects_radius_limit_and_bound() {
        let g = graph(400, 2, 1.0, 8);
        let full = bfs(&g, 400).unwrap();
        let mut scratch = Scratch::new(400);
        for radius in 0..5 {
            let expect = full.as_slice().iter().filter(|&&d| d <= radius).count();
            let ball = scratch.ball(&g, 399, radius, usize::MAX, 400);
            assert_eq!(ball.size, expect);
            assert_eq!(ball.limit_depth, None);
        }
        let capped = scratch.ball(&g, 399, 10, 25, 400);
        assert_eq!(capped.size, 25);
        let depth = capped.limit_depth.unwrap();
        assert!(full.as_slice().iter().filter(|&&d| d <= depth).count() >= 25);
        assert!(full.as_slice().iter().filter(|&&d| d < depth).count() < 25);
        // restricted to the first 100 vertices the ball cannot exceed 100
        assert!(scratch.ball(&g, 0, 50, usize::MAX, 100).size <= 100);
        assert_eq!(scratch.ball(&g, 5, 3, 1, 400).size, 1);
    }

    #[test]
    fn histogram_sums_to_n() {
        let g = graph(500, 2, 1.0, 1);
        let d = bfs(&g, 17).unwrap();
        assert_eq!(d.histogram().iter().sum::<u64>(), 500);
        assert_eq!(d.histogram()[0], 1);
    }
}
