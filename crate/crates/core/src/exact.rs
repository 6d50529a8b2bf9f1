//! Closed-form probabilities of edge-set events.
//!
//! For a set `E` of triples `(newer, slot, target)`, the probability that
//! every triple is present factorizes over vertices `s = 2..=n`:
//!
//! ```text
//!   (m+d+p_s-1)_{p_s} * ((2s-3)m+(s-1)d+q_s-1)_{q_s}
//!   ------------------------------------------------
//!        ((2s-2)m+sd+p_s+q_s-1)_{p_s+q_s}
//! ```
//!
//! where `p_s` counts triples landing on `s`, `q_s` counts triples whose
//! endpoints straddle `s` (`target < s < newer`) and `(x)_r` is the falling
//! factorial.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::EdgeTriple;
use crate::params::Params;

/// Largest `|E'|` accepted by [`conditional_probability`].
pub const MAX_INCLUSION_EXCLUSION: usize = 12;

/// `x (x-1) ... (x-r+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: f64, r: u32) -> f64 {
    (0..r).map(|k| x - k as f64).product()
}

/// Natural log of `(x)_r`. Every factor must be positive.
pub fn ln_falling_factorial(x: f64, r: u32) -> f64 {
    debug_assert!(r == 0 || x - (r - 1) as f64 > 0.0);
    (0..r).map(|k| (x - k as f64).ln()).sum()
}

/// A set of distinct potential edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeEvent {
    edges: BTreeSet<EdgeTriple>,
}

impl EdgeEvent {
    pub fn new(edges: impl IntoIterator<Item = EdgeTriple>) -> Self {
        Self {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeTriple> {
        self.edges.iter()
    }

    pub fn contains(&self, e: &EdgeTriple) -> bool {
        self.edges.contains(e)
    }

    pub fn is_disjoint(&self, other: &EdgeEvent) -> bool {
        self.edges.is_disjoint(&other.edges)
    }

    pub fn union(&self, other: &EdgeEvent) -> EdgeEvent {
        EdgeEvent {
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    /// Smallest label touched by any edge.
    pub fn min_label(&self) -> Option<u32> {
        self.edges.iter().map(|e| e.target.min(e.newer)).min()
    }

    /// True when two triples claim the same `(newer, slot)` with different
    /// targets, or a triple points at a vertex that is not older.
    pub fn is_impossible(&self) -> bool {
        if self.edges.iter().any(|e| e.target >= e.newer) {
            return true;
        }
        // the set is ordered by (newer, slot, target)
        self.edges
            .iter()
            .zip(self.edges.iter().skip(1))
            .any(|(a, b)| a.newer == b.newer && a.slot == b.slot)
    }

    fn check_bounds(&self, n: u32, params: Params) -> Result<()> {
        self.edges
            .iter()
            .try_for_each(|e| e.check_bounds(n, params.m()))
    }
}

impl FromIterator<EdgeTriple> for EdgeEvent {
    fn from_iter<I: IntoIterator<Item = EdgeTriple>>(iter: I) -> Self {
        Self::new(iter)
    }
}

/// Per-vertex counts `p_s` (edges landing on `s`) and `q_s` (edges spanning
/// `s`). Only vertices with a nonzero count are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShellCounts {
    pub p: BTreeMap<u32, u32>,
    pub q: BTreeMap<u32, u32>,
}

impl ShellCounts {
    pub fn from_event(event: &EdgeEvent) -> Self {
        let mut counts = Self::default();
        let mut sweep: BTreeMap<u32, i64> = BTreeMap::new();
        for e in event.iter() {
            *counts.p.entry(e.target).or_default() += 1;
            if e.target + 1 < e.newer {
                *sweep.entry(e.target + 1).or_default() += 1;
                *sweep.entry(e.newer).or_default() -= 1;
            }
        }
        let mut open = 0i64;
        let mut points = sweep.into_iter().peekable();
        while let Some((s, change)) = points.next() {
            open += change;
            if open > 0 {
                let end = points.peek().map(|&(next, _)| next).unwrap_or(s + 1);
                for v in s..end {
                    counts.q.insert(v, open as u32);
                }
            }
        }
        counts
    }

    pub fn p(&self, s: u32) -> u32 {
        self.p.get(&s).copied().unwrap_or(0)
    }

    pub fn q(&self, s: u32) -> u32 {
        self.q.get(&s).copied().unwrap_or(0)
    }

    /// Vertices `s >= 2` with `p_s + q_s > 0`, in increasing order.
    fn active(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        let keys: BTreeSet<u32> = self.p.keys().chain(self.q.keys()).copied().collect();
        keys.into_iter()
            .filter(|&s| s >= 2)
            .map(|s| (s, self.p(s), self.q(s)))
    }
}

struct Factor {
    own: f64,
    older: f64,
    total: f64,
}

fn factor_bases(s: u32, params: Params) -> Factor {
    let m = params.m() as f64;
    let d = params.delta();
    let s = s as f64;
    Factor {
        own: m + d,
        older: (2.0 * s - 3.0) * m + (s - 1.0) * d,
        total: (2.0 * s - 2.0) * m + s * d,
    }
}

fn checked_counts(event: &EdgeEvent, n: u32, params: Params) -> Result<Option<ShellCounts>> {
    event.check_bounds(n, params)?;
    if event.is_impossible() {
        return Ok(None);
    }
    Ok(Some(ShellCounts::from_event(event)))
}

/// Natural log of the probability that every edge of `event` is present in
/// a graph on `n` vertices. Returns `-inf` for impossible events.
pub fn ln_edge_set_probability(event: &EdgeEvent, n: u32, params: Params) -> Result<f64> {
    let Some(counts) = checked_counts(event, n, params)? else {
        return Ok(f64::NEG_INFINITY);
    };
    Ok(counts
        .active()
        .map(|(s, p, q)| {
            let b = factor_bases(s, params);
            ln_falling_factorial(b.own + p as f64 - 1.0, p)
                + ln_falling_factorial(b.older + q as f64 - 1.0, q)
                - ln_falling_factorial(b.total + (p + q) as f64 - 1.0, p + q)
        })
        .sum())
}

/// Probability that every edge of `event` is present in a graph on `n`
/// vertices. Events that cannot occur (a slot attached twice, a target that
/// is not older) have probability zero.
pub fn edge_set_probability(event: &EdgeEvent, n: u32, params: Params) -> Result<f64> {
    if event.len() > 8 || n > 1000 {
        return Ok(ln_edge_set_probability(event, n, params)?.exp());
    }
    let Some(counts) = checked_counts(event, n, params)? else {
        return Ok(0.0);
    };
    Ok(counts
        .active()
        .map(|(s, p, q)| {
            let b = factor_bases(s, params);
            falling_factorial(b.own + p as f64 - 1.0, p)
                * falling_factorial(b.older + q as f64 - 1.0, q)
                / falling_factorial(b.total + (p + q) as f64 - 1.0, p + q)
        })
        .product())
}

/// `P[some edge of E' present | all edges of E present]`, by
/// inclusion-exclusion over the subsets of `E'`.
pub fn conditional_probability(
    given: &EdgeEvent,
    any_of: &EdgeEvent,
    n: u32,
    params: Params,
) -> Result<f64> {
    if !given.is_disjoint(any_of) {
        return Err(Error::EventsNotDisjoint);
    }
    any_of.check_bounds(n, params)?;
    if any_of.len() > MAX_INCLUSION_EXCLUSION {
        return Err(Error::EventTooLarge {
            got: any_of.len(),
            limit: MAX_INCLUSION_EXCLUSION,
        });
    }
    let base = edge_set_probability(given, n, params)?;
    if base == 0.0 {
        return Err(Error::ZeroProbabilityCondition);
    }
    let extra: Vec<EdgeTriple> = any_of.iter().copied().collect();
    let mut union = 0.0;
    for mask in 1u32..(1 << extra.len()) {
        let subset = extra
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| *e);
        let joint = edge_set_probability(&given.union(&subset.collect()), n, params)?;
        if mask.count_ones() % 2 == 1 {
            union += joint;
        } else {
            union -= joint;
        }
    }
    Ok((union / base).clamp(0.0, 1.0))
}

/// Upper bound `(|E'|(m+d+1) + |E|) / ((2s-2)m + sd)` on the conditional
/// probability above, valid when every vertex of `E'` has label `>= s`.
pub fn bound_conditional(
    size_given: usize,
    size_any_of: usize,
    s: u32,
    params: Params,
) -> Result<f64> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s must be at least 2, got {s}")));
    }
    let b = factor_bases(s, params);
    assert!(b.total > 0.0, "nonpositive denominator for s = {s}");
    Ok((size_any_of as f64 * (b.own + 1.0) + size_given as f64) / b.total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: i64, delta: f64) -> Params {
        Params::new(m, delta).unwrap()
    }

    fn ev(edges: &[(u32, u32, u32)]) -> EdgeEvent {
        edges.iter().map(|&(a, b, c)| EdgeTriple::new(a, b, c)).collect()
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(5.5, 0), 1.0);
        assert_eq!(falling_factorial(4.0, 2), 12.0);
        assert_eq!(falling_factorial(1.0 + 0.0, 1), 1.0);
        assert_eq!(falling_factorial(3.0, 4), 0.0);
        assert!((ln_falling_factorial(7.5, 3) - (7.5f64 * 6.5 * 5.5).ln()).abs() < 1e-12);
    }

    #[test]
    fn empty_event_is_certain() {
        assert_eq!(edge_set_probability(&EdgeEvent::empty(), 7, params(2, 1.0)).unwrap(), 1.0);
    }

    #[test]
    fn third_vertex_attaches_to_first_with_half() {
        for delta in [-0.9, 0.0, 0.3, 5.0] {
            let p = edge_set_probability(&ev(&[(3, 1, 1)]), 3, params(1, delta)).unwrap();
            assert!((p - 0.5).abs() < 1e-15, "delta = {delta}: {p}");
        }
    }

    #[test]
    fn initial_edges_are_certain() {
        let p = edge_set_probability(&ev(&[(2, 1, 1), (2, 2, 1)]), 4, params(2, 0.7)).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conflicting_slot_has_zero_probability() {
        let e = ev(&[(4, 1, 1), (4, 1, 2)]);
        assert!(e.is_impossible());
        assert_eq!(edge_set_probability(&e, 5, params(1, 0.0)).unwrap(), 0.0);
        assert_eq!(ln_edge_set_probability(&e, 5, params(1, 0.0)).unwrap(), f64::NEG_INFINITY);
        let forward = ev(&[(3, 1, 3)]);
        assert_eq!(edge_set_probability(&forward, 5, params(1, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn out_of_range_triples_are_rejected() {
        assert!(edge_set_probability(&ev(&[(6, 1, 1)]), 5, params(1, 0.0)).is_err());
        assert!(edge_set_probability(&ev(&[(4, 2, 1)]), 5, params(1, 0.0)).is_err());
    }

    #[test]
    fn shell_counts_use_spanning_edges() {
        let c = ShellCounts::from_event(&ev(&[(6, 1, 2), (5, 1, 2), (4, 1, 3)]));
        assert_eq!(c.p(2), 2);
        assert_eq!(c.p(3), 1);
        assert_eq!((c.q(2), c.q(3), c.q(4), c.q(5), c.q(6)), (0, 2, 2, 1, 0));
        let total_p: u32 = c.p.values().sum();
        assert_eq!(total_p, 3);
    }

    #[test]
    fn log_and_direct_products_agree() {
        let e = ev(&[(9, 1, 2), (9, 2, 5), (7, 1, 2), (12, 2, 11)]);
        let p = params(2, 0.5);
        let direct = edge_set_probability(&e, 12, p).unwrap();
        let via_log = ln_edge_set_probability(&e, 12, p).unwrap().exp();
        assert!((direct - via_log).abs() < 1e-14 * direct.max(1e-300));
    }

    #[test]
    fn conditional_basics() {
        let p = params(1, 0.0);
        let c = conditional_probability(&EdgeEvent::empty(), &ev(&[(3, 1, 1)]), 3, p).unwrap();
        assert!((c - 0.5).abs() < 1e-15);
        let c = conditional_probability(&ev(&[(3, 1, 1)]), &EdgeEvent::empty(), 4, p).unwrap();
        assert_eq!(c, 0.0);
        assert!(matches!(
            conditional_probability(&ev(&[(3, 1, 1)]), &ev(&[(3, 1, 1)]), 4, p),
            Err(Error::EventsNotDisjoint)
        ));
        assert!(matches!(
            conditional_probability(&ev(&[(3, 1, 2), (3, 1, 1)]), &ev(&[(4, 1, 1)]), 4, p),
            Err(Error::ZeroProbabilityCondition)
        ));
    }

    #[test]
    fn conditional_rejects_large_unions() {
        let big: EdgeEvent = (3..=16).map(|t| EdgeTriple::new(t, 1, 1)).collect();
        assert!(matches!(
            conditional_probability(&EdgeEvent::empty(), &big, 16, params(1, 0.0)),
            Err(Error::EventTooLarge { .. })
        ));
    }

    #[test]
    fn bound_values() {
        assert_eq!(bound_conditional(0, 1, 2, params(1, 0.0)).unwrap(), 1.0);
        assert_eq!(bound_conditional(0, 0, 5, params(1, 0.0)).unwrap(), 0.0);
        let b = bound_conditional(3, 1, 10, params(2, 1.0)).unwrap();
        assert!((b - 7.0 / 46.0).abs() < 1e-15);
        assert!(bound_conditional(0, 1, 1, params(1, 0.0)).is_err());
    }
}
