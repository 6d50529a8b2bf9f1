//! Brute-force enumeration of every attachment outcome of a small graph,
//! with probabilities multiplied out from the sequential attachment rule in
//! exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::EdgeEvent;
use crate::graph::EdgeTriple;
use crate::params::Params;

pub const MAX_OUTCOMES: u128 = 1_000_000;

/// One complete outcome: the targets of edges `(3,1), (3,2), ..., (n,m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub targets: Vec<u32>,
    pub probability: f64,
}

#[derive(Clone, Debug)]
pub struct ExactDistribution {
    pub n: u32,
    pub params: Params,
    pub outcomes: Vec<Outcome>,
}

/// `prod_{t=3}^{n} (t-1)^m`.
pub fn outcome_count(n: u32, m: u32) -> u128 {
    (3..=n as u128)
        .map(|t| (t - 1).saturating_pow(m))
        .fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite delta")
}

/// Enumerates all outcomes in lexicographic order of their target sequences.
pub fn enumerate_distribution(n: u32, params: Params) -> Result<ExactDistribution> {
    if n < 2 {
        return Err(Error::TooFewVertices(n as u64));
    }
    let m = params.m();
    let count = outcome_count(n, m);
    if count > MAX_OUTCOMES {
        return Err(Error::EnumerationTooLarge {
            outcomes: count,
            limit: MAX_OUTCOMES,
        });
    }
    let delta = rational(params.delta());
    let mut degrees = vec![0u64; n as usize + 1];
    degrees[1] = m as u64;
    degrees[2] = m as u64;
    let mut walk = Walk {
        n,
        m,
        delta,
        degrees,
        targets: Vec::with_capacity(((n as usize).saturating_sub(2)) * m as usize),
        outcomes: Vec::with_capacity(count as usize),
    };
    walk.descend(3, 1, BigRational::one());
    Ok(ExactDistribution {
        n,
        params,
        outcomes: walk.outcomes,
    })
}

struct Walk {
    n: u32,
    m: u32,
    delta: BigRational,
    degrees: Vec<u64>,
    targets: Vec<u32>,
    outcomes: Vec<Outcome>,
}

impl Walk {
    fn descend(&mut self, t: u32, slot: u32, prob: BigRational) {
        if t > self.n {
            self.outcomes.push(Outcome {
                targets: self.targets.clone(),
                probability: prob.to_f64().unwrap_or(0.0),
            });
            return;
        }
        let (next_t, next_slot) = if slot == self.m { (t + 1, 1) } else { (t, slot + 1) };
        let total: BigRational = (1..t)
            .map(|k| BigRational::from_integer(BigInt::from(self.degrees[k as usize])) + &self.delta)
            .fold(BigRational::zero(), |acc, w| acc + w);
        for k in 1..t {
            let weight =
                BigRational::from_integer(BigInt::from(self.degrees[k as usize])) + &self.delta;
            let p = &prob * weight / &total;
            self.degrees[k as usize] += 1;
            self.degrees[t as usize] += 1;
            self.targets.push(k);
            self.descend(next_t, next_slot, p);
            self.targets.pop();
            self.degrees[t as usize] -= 1;
            self.degrees[k as usize] -= 1;
        }
    }
}

impl ExactDistribution {
    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    /// Whether `triple` is an edge of the outcome.
    pub fn contains(&self, outcome: &Outcome, triple: &EdgeTriple) -> bool {
        let m = self.params.m();
        if triple.slot < 1 || triple.slot > m || triple.newer > self.n {
            return false;
        }
        match triple.newer {
            2 => triple.target == 1,
            t if t >= 3 => {
                outcome.targets[((t - 3) * m + triple.slot - 1) as usize] == triple.target
            }
            _ => false,
        }
    }

    /// Full edge list of an outcome, initial edges included.
    pub fn triples(&self, outcome: &Outcome) -> Vec<EdgeTriple> {
        let m = self.params.m();
        (1..=m)
            .map(|i| EdgeTriple::new(2, i, 1))
            .chain(outcome.targets.iter().enumerate().map(|(k, &j)| {
                EdgeTriple::new(k as u32 / m + 3, k as u32 % m + 1, j)
            }))
            .collect()
    }

    /// Position of a target sequence in the enumeration order (mixed radix
    /// with digit `target - 1` in base `t - 1`).
    pub fn outcome_index(&self, targets: &[u32]) -> Option<usize> {
        let m = self.params.m() as usize;
        if targets.len() != self.outcomes.first().map_or(0, |o| o.targets.len()) {
            return None;
        }
        let mut idx = 0usize;
        for (k, &j) in targets.iter().enumerate() {
            let base = (k / m + 2) as u32;
            if j < 1 || j > base {
                return None;
            }
            idx = idx * base as usize + (j - 1) as usize;
        }
        Some(idx)
    }

    /// Probability that all edges of `event` are present.
    pub fn marginal(&self, event: &EdgeEvent) -> f64 {
        self.outcomes
            .iter()
            .filter(|o| event.iter().all(|e| self.contains(o, e)))
            .map(|o| o.probability)
            .sum()
    }

    /// `P[some edge of any_of present | all edges of given present]`.
    pub fn conditional_probability(&self, given: &EdgeEvent, any_of: &EdgeEvent) -> Result<f64> {
        if !given.is_disjoint(any_of) {
            return Err(Error::EventsNotDisjoint);
        }
        let mut base = 0.0;
        let mut hit = 0.0;
        for o in &self.outcomes {
            if given.iter().all(|e| self.contains(o, e)) {
                base += o.probability;
                if any_of.iter().any(|e| self.contains(o, e)) {
                    hit += o.probability;
                }
            }
        }
        if base == 0.0 {
            return Err(Error::ZeroProbabilityCondition);
        }
        Ok(hit / base)
    }
}
