use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::harness::plan::ExperimentPlan;
use crate::harness::runner::ExperimentRow;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MeanSd {
    pub mean: f64,
    /// Sample standard deviation; zero for a single observation.
    pub sd: f64,
}

impl MeanSd {
    pub fn of(xs: &[f64]) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        let k = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / k;
        let sd = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(Self { mean, sd })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeSummary {
    pub n: u32,
    pub seeds: usize,
    pub diameter: MeanSd,
    pub typical_median: MeanSd,
    pub ratio_diam: Option<MeanSd>,
    pub ratio_typical: Option<MeanSd>,
}

/// Least-squares line `ratio = intercept + slope / ln n` through the per-size
/// means.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trend {
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub m: i64,
    pub delta: f64,
    pub sizes: Vec<SizeSummary>,
    pub trend_ratio_diam: Option<Trend>,
    pub trend_ratio_typical: Option<Trend>,
}

pub fn fit_inverse_log(points: &[(u32, f64)]) -> Option<Trend> {
    if points.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| 1.0 / (n as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| (x - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(Trend {
        slope,
        intercept: my - slope * mx,
    })
}

impl Summary {
    pub fn from_rows(plan: &ExperimentPlan, rows: &[ExperimentRow]) -> Self {
        let mut by_n: BTreeMap<u32, Vec<&ExperimentRow>> = BTreeMap::new();
        for r in rows {
            by_n.entry(r.n).or_default().push(r);
        }
        let sizes: Vec<SizeSummary> = by_n
            .into_iter()
            .map(|(n, rs)| {
                let col = |f: &dyn Fn(&ExperimentRow) -> Option<f64>| -> Option<MeanSd> {
                    let xs: Option<Vec<f64>> = rs.iter().map(|r| f(r)).collect();
                    xs.and_then(|xs| MeanSd::of(&xs))
                };
                SizeSummary {
                    n,
                    seeds: rs.len(),
                    diameter: col(&|r| Some(r.diameter as f64)).unwrap_or_default(),
                    typical_median: col(&|r| Some(r.typical_median)).unwrap_or_default(),
                    ratio_diam: col(&|r| r.ratio_diam),
                    ratio_typical: col(&|r| r.ratio_typical),
                }
            })
            .collect();
        let trend = |f: &dyn Fn(&SizeSummary) -> Option<f64>| {
            let pts: Option<Vec<(u32, f64)>> = sizes.iter().map(|s| f(s).map(|y| (s.n, y))).collect();
            pts.and_then(|p| fit_inverse_log(&p))
        };
        Self {
            schema: super::runner::SCHEMA_VERSION,
            m: plan.m,
            delta: plan.delta,
            trend_ratio_diam: trend(&|s| s.ratio_diam.as_ref().map(|x| x.mean)),
            trend_ratio_typical: trend(&|s| s.ratio_typical.as_ref().map(|x| x.mean)),
            sizes,
        }
    }
}

pub fn write_summary(summary: &Summary, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(summary)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
