use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model parameters `(m, delta)`: `m` edges per new vertex and the affine
/// offset `delta` in the attachment weight `degree + delta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    m: u32,
    delta: f64,
}

impl Params {
    /// Accepts `m >= 1` and `delta > -m`.
    pub fn new(m: i64, delta: f64) -> Result<Self> {
        if m < 1 || m > u32::MAX as i64 {
            return Err(Error::InvalidM(m));
        }
        let bound = -(m as f64);
        if !delta.is_finite() || delta <= bound {
            return Err(Error::DeltaOutOfDomain { delta, bound });
        }
        Ok(Self { m: m as u32, delta })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Initial weight of a vertex once it has placed its own `m` edges.
    pub fn base_weight(&self) -> f64 {
        self.m as f64 + self.delta
    }

    /// Total attachment weight seen by edge `slot` of vertex `t`:
    /// `2m(t-2) + (slot-1) + (t-1) delta`.
    pub fn attachment_normalizer(&self, t: u32, slot: u32) -> f64 {
        debug_assert!(t >= 3 && slot >= 1 && slot <= self.m);
        let count = 2 * self.m as u64 * (t as u64 - 2) + (slot as u64 - 1);
        count as f64 + (t - 1) as f64 * self.delta
    }
}

/// Seed for the graph generator. The generator is ChaCha8 (`rand_chacha`),
/// seeded through `SeedableRng::seed_from_u64`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed(pub u64);

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        Self(seed)
    }
}

/// Checked `(m, delta)` construction.
pub fn validate_params(m: i64, delta: f64) -> Result<Params> {
    Params::new(m, delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_positive_delta() {
        let p = validate_params(2, 1.0).unwrap();
        assert_eq!(p.m(), 2);
        assert_eq!(p.delta(), 1.0);
    }

    #[test]
    fn accepts_negative_delta_inside_domain() {
        let p = validate_params(3, -2.5).unwrap();
        assert_eq!((p.m(), p.delta()), (3, -2.5));
    }

    #[test]
    fn rejects_boundary_delta() {
        let err = validate_params(1, -1.0).unwrap_err();
        assert!(matches!(err, Error::DeltaOutOfDomain { .. }));
        assert!(err.to_string().contains("-1"));
    }

    #[test]
    fn rejects_nonpositive_m() {
        assert!(matches!(validate_params(0, 1.0), Err(Error::InvalidM(0))));
        assert!(matches!(validate_params(-3, 1.0), Err(Error::InvalidM(-3))));
    }

    #[test]
    fn rejects_nan_delta() {
        assert!(validate_params(2, f64::NAN).is_err());
        assert!(validate_params(2, f64::INFINITY).is_err());
    }

    #[test]
    fn normalizer_matches_direct_sum() {
        // degrees of G_{t,i-1} restricted to vertices < t, plus delta each
        let p = validate_params(2, 0.5).unwrap();
        // t = 3, slot 1: v1, v2 have degree 2 each
        assert_eq!(p.attachment_normalizer(3, 1), 2.0 + 2.0 + 2.0 * 0.5);
        // t = 3, slot 2: one endpoint already landed
        assert_eq!(p.attachment_normalizer(3, 2), 5.0 + 2.0 * 0.5);
        // t = 4, slot 1: total degree of G_3 is 8
        assert_eq!(p.attachment_normalizer(4, 1), 8.0 + 3.0 * 0.5);
    }
}
