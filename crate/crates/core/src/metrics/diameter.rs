//! Exact diameter by fringe processing around a central vertex, with
//! per-vertex eccentricity upper bounds used to skip searches.
//!
//! A double sweep from the highest-degree vertex gives a lower bound and a
//! candidate center `c`. Vertices are then visited by decreasing distance
//! from `c`. Once every vertex at distance `>= i` from `c` is known to have
//! eccentricity `<= lb`, all remaining pairs are within `2(i-1)`, so the
//! search stops when `lb >= 2(i-1)`. A vertex is skipped when an earlier
//! search already bounds its eccentricity by `lb`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::PAGraph;
use crate::metrics::bfs::full_bfs;
use crate::params::RngSeed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiameterResult {
    pub diameter: u32,
    /// Endpoints of a longest shortest path, as labels.
    pub endpoints: (u32, u32),
    /// Number of full searches performed.
    pub searches: usize,
}

struct Bounds {
    upper: Vec<u32>,
    dist: Vec<u32>,
    queue: Vec<u32>,
    lower: u32,
    endpoints: (usize, usize),
    searches: usize,
}

impl Bounds {
    fn new(n: usize) -> Self {
        Self {
            upper: vec![u32::MAX; n],
            dist: Vec::with_capacity(n),
            queue: Vec::with_capacity(n),
            lower: 0,
            endpoints: (0, 0),
            searches: 0,
        }
    }

    /// Runs a search from `src`, folds the result into the bounds and
    /// returns `(eccentricity, farthest vertex)`.
    fn search(&mut self, g: &PAGraph, src: usize) -> (u32, usize) {
        let ecc = full_bfs(g, src, &mut self.dist, &mut self.queue);
        self.searches += 1;
        // the queue ends with the vertices at maximal distance; take the
        // smallest index among them
        let far = self
            .queue
            .iter()
            .rev()
            .take_while(|&&x| self.dist[x as usize] == ecc)
            .map(|&x| x as usize)
            .min()
            .unwrap_or(src);
        for (w, &d) in self.dist.iter().enumerate() {
            let candidate = ecc + d;
            if candidate < self.upper[w] {
                self.upper[w] = candidate;
            }
        }
        self.upper[src] = ecc;
        if ecc > self.lower || self.searches == 1 {
            self.lower = ecc;
            self.endpoints = (src, far);
        }
        (ecc, far)
    }
}

/// Exact eccentricities of up to `WIDTH` sources at once: one pass over the
/// adjacency per BFS level, with a bit per source in each vertex word.
struct EccBatch {
    seen: Vec<[u64; LANES]>,
    frontier: Vec<[u64; LANES]>,
    next: Vec<[u64; LANES]>,
}

const LANES: usize = 4;

impl EccBatch {
    const WIDTH: usize = 64 * LANES;

    fn new(n: usize) -> Self {
        Self {
            seen: vec![[0; LANES]; n],
            frontier: vec![[0; LANES]; n],
            next: vec![[0; LANES]; n],
        }
    }

    fn run(&mut self, g: &PAGraph, sources: &[usize]) -> Vec<u32> {
        assert!(sources.len() <= Self::WIDTH);
        let n = self.seen.len();
        let mut full = [0u64; LANES];
        for k in 0..sources.len() {
            full[k / 64] |= 1 << (k % 64);
        }
        self.seen.iter_mut().for_each(|w| *w = [0; LANES]);
        self.frontier.iter_mut().for_each(|w| *w = [0; LANES]);
        for (k, &s) in sources.iter().enumerate() {
            self.seen[s][k / 64] |= 1 << (k % 64);
            self.frontier[s][k / 64] |= 1 << (k % 64);
        }
        let mut ecc = vec![0u32; sources.len()];
        let mut round = 0;
        loop {
            round += 1;
            let mut any = [0u64; LANES];
            for v in 0..n {
                let seen = self.seen[v];
                if seen == full {
                    self.next[v] = [0; LANES];
                    continue;
                }
                let mut acc = [0u64; LANES];
                for &u in g.adj(v) {
                    let f = &self.frontier[u as usize];
                    for l in 0..LANES {
                        acc[l] |= f[l];
                    }
                }
                for l in 0..LANES {
                    acc[l] &= !seen[l];
                    any[l] |= acc[l];
                }
                self.next[v] = acc;
            }
            if any == [0; LANES] {
                break;
            }
            for v in 0..n {
                for l in 0..LANES {
                    self.seen[v][l] |= self.next[v][l];
                }
            }
            for (l, &word) in any.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let k = l * 64 + word.trailing_zeros() as usize;
                    ecc[k] = round;
                    word &= word - 1;
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        ecc
    }
}

fn max_degree_vertex(g: &PAGraph) -> usize {
    let degrees = g.degrees();
    let mut best = 0;
    for (v, &d) in degrees.iter().enumerate() {
        if d > degrees[best] {
            best = v;
        }
    }
    best
}

/// Exact diameter with search statistics.
pub fn diameter_exact_with_stats(g: &PAGraph) -> DiameterResult {
    let n = g.n() as usize;
    let mut b = Bounds::new(n);

    let hub = max_degree_vertex(g);
    let (hub_ecc, a) = b.search(g, hub);
    let hub_dist = b.dist.clone();
    let (ab, far_b) = b.search(g, a);
    let dist_a = b.dist.clone();
    b.search(g, far_b);

    // midpoint of the a..b path
    let half = ab / 2;
    let mid = (0..n)
        .find(|&x| dist_a[x] == half && b.dist[x] == ab - half)
        .unwrap_or(hub);
    let mut center = hub;
    let mut center_ecc = hub_ecc;
    if mid != hub {
        let (mid_ecc, _) = b.search(g, mid);
        if mid_ecc < center_ecc {
            center = mid;
            center_ecc = mid_ecc;
        }
    }
    let level = if center == hub { hub_dist } else { b.dist.clone() };

    // vertices grouped by distance from the center
    let mut fringes: Vec<Vec<usize>> = vec![Vec::new(); center_ecc as usize + 1];
    for (w, &d) in level.iter().enumerate() {
        fringes[d as usize].push(w);
    }

    let mut batch = EccBatch::new(n);
    let mut i = center_ecc;
    while i >= 1 && b.lower < 2 * i {
        let mut fringe = std::mem::take(&mut fringes[i as usize]);
        fringe.retain(|&w| b.upper[w] > b.lower);
        fringe.sort_by_key(|&w| (std::cmp::Reverse(b.upper[w]), w));
        for chunk in fringe.chunks(EccBatch::WIDTH) {
            let chunk: Vec<usize> = chunk.iter().copied().filter(|&w| b.upper[w] > b.lower).collect();
            if chunk.is_empty() {
                continue;
            }
            let eccs = batch.run(g, &chunk);
            b.searches += chunk.len();
            let mut best: Option<(u32, usize)> = None;
            for (&w, &e) in chunk.iter().zip(&eccs) {
                b.upper[w] = e;
                if e > b.lower && best.is_none_or(|(be, bw)| (e, std::cmp::Reverse(w)) > (be, std::cmp::Reverse(bw))) {
                    best = Some((e, w));
                }
            }
            if let Some((_, w)) = best {
                // a full search from the new endpoint also tightens bounds
                b.search(g, w);
            }
        }
        if b.lower >= 2 * (i - 1) {
            break;
        }
        if b.upper.iter().all(|&u| u <= b.lower) {
            break;
        }
        i -= 1;
    }

    DiameterResult {
        diameter: b.lower,
        endpoints: (b.endpoints.0 as u32 + 1, b.endpoints.1 as u32 + 1),
        searches: b.searches,
    }
}

/// Exact diameter (maximum hop distance over all vertex pairs).
pub fn diameter_exact(g: &PAGraph) -> u32 {
    diameter_exact_with_stats(g).diameter
}

/// Lower bound on the diameter for graphs too large for the exact
/// algorithm: a double sweep from the highest-degree vertex plus the
/// eccentricities of `samples` uniformly drawn vertices.
pub fn diameter_lower_bound(g: &PAGraph, samples: usize, seed: RngSeed) -> u32 {
    let mut b = Bounds::new(g.n() as usize);
    let (_, a) = b.search(g, max_degree_vertex(g));
    b.search(g, a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(crate::rng::LOWER_BOUND_STREAM);
    for _ in 0..samples {
        let v = rng.random_range(0..g.n() as usize);
        b.search(g, v);
    }
    b.lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::generate;
    use crate::metrics::bfs::bfs;
    use crate::params::Params;

    fn graph(n: u32, m: i64, delta: f64, seed: u64) -> PAGraph {
        generate(n, Params::new(m, delta).unwrap(), RngSeed(seed)).unwrap()
    }

    fn all_sources(g: &PAGraph) -> u32 {
        (1..=g.n()).map(|v| bfs(g, v).unwrap().eccentricity()).max().unwrap()
    }

    #[test]
    fn two_vertices() {
        assert_eq!(diameter_exact(&graph(2, 1, 0.0, 0)), 1);
        assert_eq!(diameter_exact(&graph(2, 3, 1.0, 0)), 1);
    }

    #[test]
    fn three_vertex_trees() {
        // m = 1, n = 3 is always a path of length 2
        for seed in 0..10 {
            assert_eq!(diameter_exact(&graph(3, 1, 0.0, seed)), 2);
        }
    }

    #[test]
    fn n10_matches_all_sources() {
        for seed in 0..30 {
            let g = graph(10, 2, 1.0, seed);
            assert_eq!(diameter_exact(&g), all_sources(&g), "seed {seed}");
        }
    }

    #[test]
    fn trees_and_negative_delta_match_all_sources() {
        for (n, m, delta) in [(300, 1, 0.0), (300, 1, -0.7), (500, 2, -1.5), (500, 3, 4.0)] {
            for seed in 0..4 {
                let g = graph(n, m, delta, seed);
                let r = diameter_exact_with_stats(&g);
                assert_eq!(r.diameter, all_sources(&g));
                let (x, y) = r.endpoints;
                assert_eq!(bfs(&g, x).unwrap().get(y), Some(r.diameter));
            }
        }
    }

    #[test]
    fn batch_eccentricities() {
        let g = graph(3000, 2, -0.5, 9);
        let sources: Vec<usize> = (0..300).map(|k| k * 10).collect();
        let mut batch = EccBatch::new(3000);
        for chunk in sources.chunks(EccBatch::WIDTH) {
            let eccs = batch.run(&g, chunk);
            for (&s, &e) in chunk.iter().zip(&eccs) {
                assert_eq!(e, bfs(&g, s as u32 + 1).unwrap().eccentricity());
            }
        }
    }

    #[test]
    fn lower_bound_never_exceeds_exact() {
        let g = graph(2000, 2, 1.0, 5);
        let exact = diameter_exact(&g);
        assert!(diameter_lower_bound(&g, 8, RngSeed(1)) <= exact);
    }
}
