//! Leading-order diameter predictions for each `(m, delta)` regime.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `m = 1`: trees.
    M1,
    /// `m >= 2`, `-m < delta < 0`.
    NegativeDelta,
    /// `m >= 2`, `delta = 0`.
    ZeroDelta,
    /// `m >= 2`, `delta > 0`.
    PositiveDelta,
}

impl Regime {
    pub fn of(params: Params) -> Self {
        let d = params.delta();
        match params.m() {
            1 => Regime::M1,
            _ if d < 0.0 => Regime::NegativeDelta,
            _ if d == 0.0 => Regime::ZeroDelta,
            _ => Regime::PositiveDelta,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::M1 => "m1",
            Regime::NegativeDelta => "negative_delta",
            Regime::ZeroDelta => "zero_delta",
            Regime::PositiveDelta => "positive_delta",
        }
    }
}

/// Exponential growth rate of the local limit,
/// `(2m(m+d) + 2 sqrt(m(m-1)(m+d)(m+d+1))) / d`, for `m >= 2`, `d > 0`.
pub fn growth_rate_nu(params: Params) -> Result<f64> {
    if Regime::of(params) != Regime::PositiveDelta {
        return Err(Error::OutOfRegime(format!(
            "growth rate needs m >= 2 and delta > 0, got m = {}, delta = {}",
            params.m(),
            params.delta()
        )));
    }
    let m = params.m() as f64;
    let d = params.delta();
    let nu = (2.0 * m * (m + d) + 2.0 * (m * (m - 1.0) * (m + d) * (m + d + 1.0)).sqrt()) / d;
    assert!(nu > 1.0, "growth rate {nu} not above 1");
    Ok(nu)
}

/// `log_nu(n) = ln n / ln nu`.
pub fn log_nu(n: f64, params: Params) -> Result<f64> {
    Ok(n.ln() / growth_rate_nu(params)?.ln())
}

/// `theta + (1 + delta)(1 + ln theta)`.
pub fn theta_residual(theta: f64, delta: f64) -> f64 {
    theta + (1.0 + delta) * (1.0 + theta.ln())
}

/// Root in `(0, 1)` of `theta + (1 + delta)(1 + ln theta) = 0`, for
/// `delta > -1`. The left side is increasing in `theta`, so bisection on
/// `[1e-15, 1 - 1e-15]` is run until the bracket stops shrinking.
pub fn theta_root(delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta <= -1.0 {
        return Err(Error::OutOfRegime(format!(
            "theta needs delta > -1, got {delta}"
        )));
    }
    let f = |t: f64| theta_residual(t, delta);
    let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
    assert!(f(lo) < 0.0 && f(hi) > 0.0, "theta root is not bracketed");
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(hi - lo <= 1e-12);
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// Constants entering a regime formula.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FormulaInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// `|ln(1 + delta/m)|` in the negative-delta regime.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_log_one_plus_delta_over_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_m: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimePrediction {
    pub regime: Regime,
    pub n: f64,
    pub predicted_value: f64,
    pub inputs: FormulaInputs,
    /// The `delta = 0` law was established for a variant of the model that
    /// allows self-loops.
    pub variant_model: bool,
}

/// Leading-order diameter at size `n` (natural logarithms throughout).
/// `n` may be any real above 1; the doubly logarithmic regimes need `n > e`.
pub fn predicted_diameter(n: f64, params: Params) -> Result<RegimePrediction> {
    if !n.is_finite() || n <= 1.0 {
        return Err(Error::InvalidArgument(format!("n must exceed 1, got {n}")));
    }
    let regime = Regime::of(params);
    let m = params.m() as f64;
    let d = params.delta();
    let ln_n = n.ln();
    let mut inputs = FormulaInputs::default();
    let need_loglog = || {
        if ln_n > 1.0 {
            Ok(ln_n.ln())
        } else {
            Err(Error::InvalidArgument(format!(
                "regime {} needs n > e, got {n}",
                regime.as_str()
            )))
        }
    };
    let predicted_value = match regime {
        Regime::M1 => {
            let theta = theta_root(d)?;
            inputs.theta = Some(theta);
            2.0 * (1.0 + d) * ln_n / ((2.0 + d) * theta)
        }
        Regime::NegativeDelta => {
            let a = (1.0 + d / m).ln().abs();
            inputs.abs_log_one_plus_delta_over_m = Some(a);
            inputs.log_m = Some(m.ln());
            (4.0 / a + 2.0 / m.ln()) * need_loglog()?
        }
        Regime::ZeroDelta => ln_n / need_loglog()?,
        Regime::PositiveDelta => {
            let nu = growth_rate_nu(params)?;
            inputs.nu = Some(nu);
            ln_n / nu.ln()
        }
    };
    Ok(RegimePrediction {
        regime,
        n,
        predicted_value,
        inputs,
        variant_model: regime == Regime::ZeroDelta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: i64, delta: f64) -> Params {
        Params::new(m, delta).unwrap()
    }

    #[test]
    fn nu_values() {
        let nu = growth_rate_nu(params(2, 1.0)).unwrap();
        assert!((nu - (12.0 + 2.0 * 24f64.sqrt())).abs() < 1e-12);
        assert!((nu - 21.7980).abs() < 1e-4);
        let nu = growth_rate_nu(params(3, 2.0)).unwrap();
        assert!((nu - (30.0 + 2.0 * 180f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((nu - 28.4164).abs() < 1e-4);
    }

    #[test]
    fn nu_needs_positive_regime() {
        assert!(growth_rate_nu(params(1, 1.0)).is_err());
        assert!(growth_rate_nu(params(2, 0.0)).is_err());
        assert!(growth_rate_nu(params(2, -0.5)).is_err());
    }

    #[test]
    fn nu_decreases_in_delta() {
        for m in 2..6 {
            let nus: Vec<f64> = (1..=100)
                .map(|k| growth_rate_nu(params(m, k as f64 * 0.1)).unwrap())
                .collect();
            assert!(nus.windows(2).all(|w| w[1] < w[0]));
            assert!(nus.iter().all(|&nu| nu > 1.0));
        }
    }

    #[test]
    fn theta_at_zero() {
        let t = theta_root(0.0).unwrap();
        assert!((t - 0.278465).abs() < 1e-6);
        assert!((t.ln() + 1.0 + t).abs() < 1e-12);
    }

    #[test]
    fn theta_large_delta_tends_to_inverse_e() {
        let t = theta_root(1e3).unwrap();
        assert!((t - (-1.0f64).exp()).abs() < 1e-2);
        assert!(theta_residual(t, 1e3).abs() <= 1e-10);
    }

    #[test]
    fn theta_rejects_out_of_domain() {
        assert!(theta_root(-1.0).is_err());
        assert!(theta_root(f64::NAN).is_err());
    }

    #[test]
    fn regime_tags() {
        assert_eq!(Regime::of(params(1, -0.5)), Regime::M1);
        assert_eq!(Regime::of(params(1, 3.0)), Regime::M1);
        assert_eq!(Regime::of(params(3, -2.5)), Regime::NegativeDelta);
        assert_eq!(Regime::of(params(2, 0.0)), Regime::ZeroDelta);
        assert_eq!(Regime::of(params(2, 1e-9)), Regime::PositiveDelta);
    }

    #[test]
    fn prediction_examples() {
        let e = std::f64::consts::E;
        let p = predicted_diameter(e, params(2, 1.0)).unwrap();
        assert_eq!(p.regime, Regime::PositiveDelta);
        let nu = growth_rate_nu(params(2, 1.0)).unwrap();
        assert!((p.predicted_value - 1.0 / nu.ln()).abs() < 1e-12);
        assert!((p.predicted_value - 0.3246).abs() < 2e-4);

        let p = predicted_diameter(e.powf(e), params(2, 0.0)).unwrap();
        assert!((p.predicted_value - e).abs() < 1e-12);
        assert!(p.variant_model);

        let p = predicted_diameter(1e6, params(1, 0.0)).unwrap();
        assert!((p.predicted_value - 49.61).abs() < 5e-3, "{}", p.predicted_value);
        assert!(p.inputs.theta.is_some());

        let p = predicted_diameter(1e6, params(3, -2.5)).unwrap();
        let expect = (4.0 / (1.0f64 - 2.5 / 3.0).ln().abs() + 2.0 / 3f64.ln()) * 1e6f64.ln().ln();
        assert!((p.predicted_value - expect).abs() < 1e-12);
    }

    #[test]
    fn prediction_domain() {
        assert!(predicted_diameter(1.0, params(2, 1.0)).is_err());
        assert!(predicted_diameter(2.5, params(2, 0.0)).is_err());
        for n in [3.0, 10.0, 1e9] {
            for (m, d) in [(1, 0.0), (2, -1.0), (2, 0.0), (2, 1.0)] {
                assert!(predicted_diameter(n, params(m, d)).unwrap().predicted_value > 0.0);
            }
        }
    }

    #[test]
    fn prediction_is_continuous_within_regimes() {
        for (m, lo, hi) in [(2i64, 0.01, 10.0), (2, -1.99, -0.1), (1, -0.95, 10.0)] {
            let steps = 20_000;
            let values: Vec<f64> = (0..=steps)
                .map(|k| lo + (hi - lo) * k as f64 / steps as f64)
                .map(|d| predicted_diameter(1e6, params(m, d)).unwrap().predicted_value)
                .collect();
            for w in values.windows(2) {
                assert!((w[1] - w[0]).abs() < 0.05 * w[0].max(1.0), "{w:?}");
            }
        }
    }
}
