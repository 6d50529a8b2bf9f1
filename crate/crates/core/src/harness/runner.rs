use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{log_nu, Regime};
use crate::error::{Error, Result};
use crate::generate::generate;
use crate::harness::diagnostics::typical_vertex_fraction;
use crate::harness::plan::ExperimentPlan;
use crate::harness::summary::{write_summary, Summary};
use crate::metrics::{
    diameter_exact, diameter_lower_bound, max_distance_to_old_set, min_neighborhood_size,
    typical_distance,
};
use crate::params::{Params, RngSeed};
use crate::rng::derive_seed;

pub const SCHEMA_VERSION: u32 = 1;
pub const WORKERS_ENV: &str = "PA_DIAM_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterKind {
    Exact,
    /// Maximum over sampled eccentricities.
    LowerBound,
}

/// One `(n, seed)` cell of a plan. Empty optional fields become empty CSV
/// columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: u32,
    pub seed_index: u32,
    pub seed: u64,
    pub diameter: u32,
    pub diameter_kind: DiameterKind,
    pub typical_median: f64,
    pub typical_mean: f64,
    pub typical_p90: u32,
    pub median_ci_lo: u32,
    pub median_ci_hi: u32,
    pub log_nu_n: Option<f64>,
    pub ratio_diam: Option<f64>,
    pub ratio_typical: Option<f64>,
    pub nbhd_radius: Option<u32>,
    pub nbhd_threshold: Option<u64>,
    pub nbhd_min: Option<u64>,
    pub old_cutoff: Option<u32>,
    pub max_dist_old: Option<u32>,
    pub typical_fraction: Option<f64>,
    /// Seconds spent on the cell. Kept out of the CSV, which must be
    /// reproducible byte for byte; see the `.timing.csv` side file.
    #[serde(skip)]
    pub wall_time: f64,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub workers: usize,
    pub resume: bool,
}

impl RunOptions {
    /// Worker count from `PA_DIAM_WORKERS`, defaulting to the number of
    /// available cores.
    pub fn from_env(resume: bool) -> Self {
        let workers = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .filter(|&w| w > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        Self { workers, resume }
    }
}

/// Runs a plan with options from the environment and no resume.
pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<ExperimentRow>> {
    run_plan_with(plan, &RunOptions::from_env(false))
}

pub fn side_path(output: &Path, suffix: &str) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    output.with_file_name(name)
}

fn preamble(plan: &ExperimentPlan) -> String {
    format!("# pa-diam v{SCHEMA_VERSION}\n# plan {}\n", plan.fingerprint())
}

fn header_line() -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record([
        "n",
        "seed_index",
        "seed",
        "diameter",
        "diameter_kind",
        "typical_median",
        "typical_mean",
        "typical_p90",
        "median_ci_lo",
        "median_ci_hi",
        "log_nu_n",
        "ratio_diam",
        "ratio_typical",
        "nbhd_radius",
        "nbhd_threshold",
        "nbhd_min",
        "old_cutoff",
        "max_dist_old",
        "typical_fraction",
    ])
    .expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("ascii header")
}

fn row_line(row: &ExperimentRow) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.serialize(row)?;
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Reads the completed rows of an interrupted run and returns them with the
/// byte length of the valid prefix.
fn completed_rows(plan: &ExperimentPlan, path: &Path) -> Result<(Vec<ExperimentRow>, u64)> {
    let resume_err = |reason: String| Error::Resume {
        path: path.to_owned(),
        reason,
    };
    let mut reader = BufReader::new(File::open(path)?);
    let expected = format!("{}{}", preamble(plan), header_line());
    let mut prefix = String::new();
    for _ in 0..3 {
        reader.read_line(&mut prefix)?;
    }
    if prefix != expected {
        return Err(resume_err("preamble or plan does not match".into()));
    }
    let mut valid = prefix.len() as u64;
    let mut rows = Vec::new();
    let mut cells = plan.cells();
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 || !line.ends_with('\n') {
            break;
        }
        let row: ExperimentRow = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(line.as_bytes())
            .deserialize()
            .next()
            .ok_or_else(|| resume_err("empty row".into()))?
            .map_err(|e| resume_err(format!("unreadable row: {e}")))?;
        let Some((n, seed_index)) = cells.next() else {
            return Err(resume_err("more rows than cells".into()));
        };
        if (row.n, row.seed_index) != (n, seed_index)
            || row.seed != derive_seed(plan.base_seed, n, seed_index)
        {
            return Err(resume_err(format!(
                "row {} is not cell (n = {n}, seed index = {seed_index})",
                rows.len() + 1
            )));
        }
        valid += line.len() as u64;
        rows.push(row);
    }
    Ok((rows, valid))
}

/// Executes every cell of the plan, appending rows to the CSV in plan order
/// as they complete. With `resume`, cells already present in the output are
/// kept and skipped. Returns all rows, including resumed ones.
pub fn run_plan_with(plan: &ExperimentPlan, options: &RunOptions) -> Result<Vec<ExperimentRow>> {
    let params = plan.validate()?;
    let output = &plan.output;
    let timing_path = side_path(output, ".timing.csv");

    let (mut rows, mut file, mut timing) = if options.resume && output.exists() {
        let (rows, valid) = completed_rows(plan, output)?;
        let file = OpenOptions::new().write(true).open(output)?;
        file.set_len(valid)?;
        let file = OpenOptions::new().append(true).open(output)?;
        let timing = OpenOptions::new().create(true).append(true).open(&timing_path)?;
        (rows, file, timing)
    } else {
        if let Some(dir) = output.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = File::create(output)?;
        file.write_all(preamble(plan).as_bytes())?;
        file.write_all(header_line().as_bytes())?;
        file.flush()?;
        let mut timing = File::create(&timing_path)?;
        writeln!(timing, "n,seed_index,wall_time_s")?;
        (Vec::new(), file, timing)
    };

    let pending: Vec<(usize, u32, u32)> = plan
        .cells()
        .enumerate()
        .skip(rows.len())
        .map(|(k, (n, i))| (k, n, i))
        .collect();
    let mut next = rows.len();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let cancel = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, Result<ExperimentRow>)>();

    let outcome = std::thread::scope(|scope| -> Result<()> {
        let cancel = &cancel;
        let pending = &pending;
        scope.spawn(move || {
            pool.install(|| {
                pending.par_iter().for_each_with(tx, |tx, &(k, n, i)| {
                    if cancel.load(Ordering::Relaxed) {
                        return;
                    }
                    let row = run_cell(plan, params, n, i).map_err(|e| Error::Cell {
                        n,
                        seed_index: i,
                        source: Box::new(e),
                    });
                    let _ = tx.send((k, row));
                });
            })
        });

        let mut buffered: BTreeMap<usize, ExperimentRow> = BTreeMap::new();
        for (k, row) in rx {
            let row = match row {
                Ok(row) => row,
                Err(e) => {
                    cancel.store(true, Ordering::Relaxed);
                    return Err(e);
                }
            };
            buffered.insert(k, row);
            while let Some(row) = buffered.remove(&next) {
                file.write_all(row_line(&row)?.as_bytes())?;
                file.flush()?;
                writeln!(timing, "{},{},{:.6}", row.n, row.seed_index, row.wall_time)?;
                rows.push(row);
                next += 1;
            }
        }
        Ok(())
    });
    outcome?;

    let summary = Summary::from_rows(plan, &rows);
    write_summary(&summary, &side_path(output, ".summary.json"))?;
    Ok(rows)
}

/// Runs one cell. Deterministic in `(plan, n, seed_index)`.
pub fn run_cell(plan: &ExperimentPlan, params: Params, n: u32, seed_index: u32) -> Result<ExperimentRow> {
    let started = Instant::now();
    let seed = RngSeed(derive_seed(plan.base_seed, n, seed_index));
    let g = generate(n, params, seed)?;

    let (diameter, diameter_kind) = if plan.compute_exact_diameter {
        (diameter_exact(&g), DiameterKind::Exact)
    } else {
        (
            diameter_lower_bound(&g, plan.lower_bound_samples, seed),
            DiameterKind::LowerBound,
        )
    };
    let typical = typical_distance(&g, plan.pairs_per_graph, seed)?;
    let log_nu_n = if Regime::of(params) == Regime::PositiveDelta {
        Some(log_nu(n as f64, params)?)
    } else {
        None
    };
    let ratio = |x: f64| log_nu_n.filter(|_| plan.report_ratios).map(|l| x / l);

    let mut row = ExperimentRow {
        n,
        seed_index,
        seed: seed.0,
        diameter,
        diameter_kind,
        typical_median: typical.median,
        typical_mean: typical.mean,
        typical_p90: typical.p90,
        median_ci_lo: typical.median_ci.0,
        median_ci_hi: typical.median_ci.1,
        log_nu_n,
        ratio_diam: ratio(diameter as f64),
        ratio_typical: ratio(typical.median),
        nbhd_radius: None,
        nbhd_threshold: None,
        nbhd_min: None,
        old_cutoff: None,
        max_dist_old: None,
        typical_fraction: None,
        wall_time: 0.0,
    };

    if plan.check_neighborhood {
        let radius = (plan.radius_multiplier * plan.l_n(n)).ceil() as u32;
        let threshold = (n as f64).ln().powi(4).ceil() as u64;
        let found = min_neighborhood_size(&g, radius, threshold as usize);
        row.nbhd_radius = Some(radius);
        row.nbhd_threshold = Some(threshold);
        row.nbhd_min = Some(found.size as u64);
    }

    if plan.sprinkling_diagnostics {
        let k = plan.k_n(n) as u64;
        if (n as u64) > 2 * k {
            let cutoff = n - 2 * k as u32;
            let radius = match log_nu_n {
                Some(l) => l.ceil() as u32,
                None => typical.median.ceil() as u32,
            };
            row.old_cutoff = Some(cutoff);
            row.max_dist_old = Some(max_distance_to_old_set(&g, cutoff)?.0);
            row.typical_fraction = Some(typical_vertex_fraction(
                &g,
                radius,
                cutoff,
                plan.diagnostic_samples,
                seed,
            )?);
        }
    }

    row.wall_time = started.elapsed().as_secs_f64();
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_plan(dir: &Path) -> ExperimentPlan {
        let mut plan = ExperimentPlan::new(2, 1.0, vec![64, 128, 256], 2, dir.join("run.csv"));
        plan.pairs_per_graph = 200;
        plan.base_seed = 11;
        plan
    }

    #[test]
    fn header_matches_row_fields() {
        let row = ExperimentRow {
            n: 1,
            seed_index: 0,
            seed: 0,
            diameter: 0,
            diameter_kind: DiameterKind::Exact,
            typical_median: 0.0,
            typical_mean: 0.0,
            typical_p90: 0,
            median_ci_lo: 0,
            median_ci_hi: 0,
            log_nu_n: None,
            ratio_diam: None,
            ratio_typical: None,
            nbhd_radius: None,
            nbhd_threshold: None,
            nbhd_min: None,
            old_cutoff: None,
            max_dist_old: None,
            typical_fraction: None,
            wall_time: 3.0,
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(&row).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), header_line().trim_end());
    }

    #[test]
    fn smoke_run() {
        let dir = tempfile::tempdir().unwrap();
        let mut plan = ExperimentPlan::new(2, 1.0, vec![1024], 1, dir.path().join("a.csv"));
        plan.pairs_per_graph = 500;
        let rows = run_plan_with(&plan, &RunOptions { workers: 1, resume: false }).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert!(r.ratio_diam.unwrap().is_finite() && r.ratio_typical.unwrap().is_finite());
        assert!(r.ratio_diam >= r.ratio_typical);
        assert!(side_path(&plan.output, ".summary.json").exists());
        let text = std::fs::read_to_string(&plan.output).unwrap();
        assert!(text.starts_with("# pa-diam v1\n# plan "));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn resume_after_truncation_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let plan = small_plan(dir.path());
        let opts = RunOptions { workers: 2, resume: false };
        run_plan_with(&plan, &opts).unwrap();
        let full = std::fs::read(&plan.output).unwrap();

        // keep four complete rows plus half of the fifth
        let text = String::from_utf8(full.clone()).unwrap();
        let mut cut = 0;
        for (k, line) in text.split_inclusive('\n').enumerate() {
            if k == 3 + 4 {
                cut += line.len() / 2;
                break;
            }
            cut += line.len();
        }
        std::fs::write(&plan.output, &full[..cut]).unwrap();
        let rows = run_plan_with(&plan, &RunOptions { workers: 1, resume: true }).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(std::fs::read(&plan.output).unwrap(), full);

        // resuming a finished run is a no-op
        run_plan_with(&plan, &RunOptions { workers: 1, resume: true }).unwrap();
        assert_eq!(std::fs::read(&plan.output).unwrap(), full);
    }

    #[test]
    fn resume_rejects_a_different_plan() {
        let dir = tempfile::tempdir().unwrap();
        let plan = small_plan(dir.path());
        run_plan_with(&plan, &RunOptions { workers: 1, resume: false }).unwrap();
        let mut other = plan.clone();
        other.base_seed += 1;
        assert!(matches!(
            run_plan_with(&other, &RunOptions { workers: 1, resume: true }),
            Err(Error::Resume { .. })
        ));
    }

    #[test]
    fn diagnostics_columns() {
        let dir = tempfile::tempdir().unwrap();
        let mut plan = small_plan(dir.path());
        plan.sizes = vec![2000];
        plan.seeds_per_size = 1;
        plan.check_neighborhood = true;
        plan.sprinkling_diagnostics = true;
        plan.compute_exact_diameter = false;
        let rows = run_plan_with(&plan, &RunOptions { workers: 1, resume: false }).unwrap();
        let r = &rows[0];
        assert_eq!(r.diameter_kind, DiameterKind::LowerBound);
        let threshold = r.nbhd_threshold.unwrap();
        assert_eq!(threshold, (2000f64).ln().powi(4).ceil() as u64);
        assert!(r.nbhd_min.unwrap() <= threshold);
        assert!(r.old_cutoff.unwrap() < 2000);
        assert!(r.max_dist_old.is_some());
        let f = r.typical_fraction.unwrap();
        assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn side_paths() {
        assert_eq!(
            side_path(Path::new("/tmp/x/run.csv"), ".summary.json"),
            PathBuf::from("/tmp/x/run.csv.summary.json")
        );
    }
}
