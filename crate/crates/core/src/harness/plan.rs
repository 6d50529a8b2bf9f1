use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::asymptotics::Regime;
use crate::error::{Error, Result};
use crate::params::Params;

/// Largest `n` for which the exact diameter is computed.
pub const EXACT_DIAMETER_LIMIT: u32 = 1 << 21;

/// Declarative description of a scaling run, read from a TOML file whose
/// keys are exactly the field names below.
///
/// ```toml
/// m = 2
/// delta = 1.0
/// sizes = [4096, 16384, 65536]
/// seeds_per_size = 5
/// pairs_per_graph = 10000
/// compute_exact_diameter = true
/// radius_multiplier = 3.0
/// output = "runs/m2d1.csv"
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentPlan {
    pub m: i64,
    pub delta: f64,
    pub sizes: Vec<u32>,
    pub seeds_per_size: u32,
    #[serde(default = "default_pairs")]
    pub pairs_per_graph: usize,
    #[serde(default = "default_true")]
    pub compute_exact_diameter: bool,
    /// Ball radius for the neighborhood check, in units of `L_n`.
    #[serde(default = "default_radius_multiplier")]
    pub radius_multiplier: f64,
    /// CSV destination; the summary and timing files are written next to it.
    pub output: PathBuf,
    /// Root of all per-cell seeds.
    #[serde(default)]
    pub base_seed: u64,
    /// Reject the plan unless ratios against `log_nu n` are defined.
    #[serde(default = "default_true")]
    pub report_ratios: bool,
    /// Extra eccentricity samples when the exact diameter is disabled.
    #[serde(default = "default_lower_bound_samples")]
    pub lower_bound_samples: usize,
    /// Record the smallest `ceil(radius_multiplier * L_n)`-ball, capped at
    /// `ceil((ln n)^4)`.
    #[serde(default)]
    pub check_neighborhood: bool,
    /// Record the distance to the oldest `n - 2 K_n` vertices and the
    /// fraction of typical vertices among them.
    #[serde(default)]
    pub sprinkling_diagnostics: bool,
    #[serde(default = "default_diagnostic_samples")]
    pub diagnostic_samples: usize,
    /// Override of `L_n = (ln n)^(2/3)`, applied to every size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_n: Option<f64>,
    /// Override of `K_n = ceil(n / ln n)`, applied to every size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_n: Option<u32>,
}

fn default_pairs() -> usize {
    10_000
}

fn default_true() -> bool {
    true
}

fn default_radius_multiplier() -> f64 {
    3.0
}

fn default_lower_bound_samples() -> usize {
    16
}

fn default_diagnostic_samples() -> usize {
    200
}

impl ExperimentPlan {
    /// A plan with the documented defaults.
    pub fn new(m: i64, delta: f64, sizes: Vec<u32>, seeds_per_size: u32, output: PathBuf) -> Self {
        Self {
            m,
            delta,
            sizes,
            seeds_per_size,
            pairs_per_graph: default_pairs(),
            compute_exact_diameter: true,
            radius_multiplier: default_radius_multiplier(),
            output,
            base_seed: 0,
            report_ratios: true,
            lower_bound_samples: default_lower_bound_samples(),
            check_neighborhood: false,
            sprinkling_diagnostics: false,
            diagnostic_samples: default_diagnostic_samples(),
            l_n: None,
            k_n: None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let plan: Self = toml::from_str(text).map_err(|e| Error::Plan(e.to_string()))?;
        plan.validate()?;
        Ok(plan)
    }

    /// Reads a plan file. A relative `output` is resolved against the
    /// plan's directory.
    pub fn from_path(path: &Path) -> Result<Self> {
        let mut plan = Self::from_toml_str(&std::fs::read_to_string(path)?)?;
        if plan.output.is_relative() {
            if let Some(dir) = path.parent() {
                plan.output = dir.join(&plan.output);
            }
        }
        Ok(plan)
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.m, self.delta)
    }

    pub fn validate(&self) -> Result<Params> {
        let params = self.params()?;
        let bad = |msg: String| Err(Error::Plan(msg));
        if self.sizes.is_empty() {
            return bad("sizes is empty".into());
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return bad("sizes must be strictly increasing".into());
        }
        if self.sizes[0] < 2 {
            return bad("every size must be at least 2".into());
        }
        if self.seeds_per_size < 1 {
            return bad("seeds_per_size must be at least 1".into());
        }
        if self.pairs_per_graph < 1 {
            return bad("pairs_per_graph must be at least 1".into());
        }
        if !self.radius_multiplier.is_finite() || self.radius_multiplier <= 0.0 {
            return bad("radius_multiplier must be positive".into());
        }
        if self.compute_exact_diameter {
            if let Some(&n) = self.sizes.iter().find(|&&n| n > EXACT_DIAMETER_LIMIT) {
                return bad(format!(
                    "exact diameter is limited to n <= {EXACT_DIAMETER_LIMIT}; size {n} needs compute_exact_diameter = false"
                ));
            }
        }
        if self.report_ratios && Regime::of(params) != Regime::PositiveDelta {
            return bad(format!(
                "ratios against log_nu n need m >= 2 and delta > 0 (regime is {}); set report_ratios = false",
                Regime::of(params).as_str()
            ));
        }
        if matches!(self.l_n, Some(l) if l.is_nan() || l <= 0.0) {
            return bad("l_n must be positive".into());
        }
        Ok(params)
    }

    /// Cells in output order: sizes ascending, then seed index.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.sizes
            .iter()
            .flat_map(move |&n| (0..self.seeds_per_size).map(move |i| (n, i)))
    }

    pub fn l_n(&self, n: u32) -> f64 {
        self.l_n.unwrap_or_else(|| (n as f64).ln().powf(2.0 / 3.0))
    }

    pub fn k_n(&self, n: u32) -> u32 {
        self.k_n
            .unwrap_or_else(|| (n as f64 / (n as f64).ln()).ceil() as u32)
    }

    /// Plan fingerprint recorded in the CSV preamble; excludes the output
    /// location so that copies of a run compare equal.
    pub(crate) fn fingerprint(&self) -> String {
        let mut copy = self.clone();
        copy.output = PathBuf::new();
        serde_json::to_string(&copy).expect("plan serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
        m = 2
        delta = 1.0
        sizes = [1024, 4096]
        seeds_per_size = 3
        output = "out.csv"
    "#;

    #[test]
    fn parses_with_defaults() {
        let p = ExperimentPlan::from_toml_str(BASIC).unwrap();
        assert_eq!(p.sizes, vec![1024, 4096]);
        assert_eq!(p.pairs_per_graph, 10_000);
        assert!(p.compute_exact_diameter);
        assert_eq!(p.radius_multiplier, 3.0);
        assert_eq!(p.cells().count(), 6);
        assert_eq!(p.cells().nth(3), Some((4096, 0)));
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = format!("{BASIC}\nworkers = 3\n");
        assert!(ExperimentPlan::from_toml_str(&text).is_err());
    }

    #[test]
    fn rejects_bad_plans() {
        let p = ExperimentPlan::from_toml_str(BASIC).unwrap();
        let mut q = p.clone();
        q.sizes = vec![4096, 1024];
        assert!(q.validate().is_err());
        let mut q = p.clone();
        q.seeds_per_size = 0;
        assert!(q.validate().is_err());
        let mut q = p.clone();
        q.delta = 0.0;
        assert!(q.validate().is_err());
        q.report_ratios = false;
        assert!(q.validate().is_ok());
        let mut q = p.clone();
        q.sizes = vec![1 << 22];
        assert!(q.validate().is_err());
        q.compute_exact_diameter = false;
        assert!(q.validate().is_ok());
        let mut q = p;
        q.delta = -3.0;
        assert!(q.validate().is_err());
    }

    #[test]
    fn scale_parameters() {
        let mut p = ExperimentPlan::from_toml_str(BASIC).unwrap();
        let n = 100_000u32;
        assert!((p.l_n(n) - (n as f64).ln().powf(2.0 / 3.0)).abs() < 1e-12);
        assert_eq!(p.k_n(n), 8686);
        p.l_n = Some(4.0);
        p.k_n = Some(10);
        assert_eq!((p.l_n(n), p.k_n(n)), (4.0, 10));
    }
}
