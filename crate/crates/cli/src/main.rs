use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pa_diameter::harness::{run_plan_with, side_path, RunOptions};
use pa_diameter::io::{read_event, read_graph_file, write_binary, write_text};
use pa_diameter::metrics::{diameter_exact_with_stats, diameter_lower_bound, MinNeighborhood};
use pa_diameter::{
    bfs, edge_set_probability, enumerate_distribution, generate, ln_edge_set_probability,
    min_neighborhood_size, neighborhood_profile, predicted_diameter, typical_distance,
    DistanceReport, ExperimentPlan, PAGraph, Params, RngSeed,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pa-diam", version, about = "Affine preferential attachment graphs and their distances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: i64,
    #[arg(long, allow_hyphen_values = true)]
    delta: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<Params> {
        Ok(Params::new(self.m, self.delta)?)
    }
}

/// A graph read from a file, or generated on the fly.
#[derive(Args)]
struct GraphArgs {
    /// Graph file (text or binary).
    #[arg(long, conflicts_with_all = ["n", "m", "delta"])]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Generation seed when no file is given.
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
}

impl GraphArgs {
    fn load(&self) -> Result<PAGraph> {
        if let Some(path) = &self.graph {
            return read_graph_file(path).with_context(|| format!("reading {}", path.display()));
        }
        let (Some(n), Some(m), Some(delta)) = (self.n, self.m, self.delta) else {
            bail!("give either --graph FILE or all of --n, --m and --delta");
        };
        Ok(generate(n, Params::new(m, delta)?, RngSeed(self.graph_seed))?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it in text (default) or binary form.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        binary: bool,
    },
    /// Probability that every edge listed in an event file is present.
    Prob {
        /// One `<newer> <slot> <target>` triple per line.
        events: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Every outcome of a small graph with its probability, as CSV.
    Enumerate {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Distances from one vertex.
    Bfs {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        source: u32,
    },
    /// Exact diameter, or a sampled lower bound with --lower-bound.
    Diameter {
        #[command(flatten)]
        graph: GraphArgs,
        /// Number of sampled eccentricities instead of the exact search.
        #[arg(long)]
        lower_bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Distances between uniformly drawn vertex pairs.
    Typdist {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the raw sampled distances as CSV instead of a summary.
        #[arg(long)]
        csv: bool,
    },
    /// BFS shell sizes around one vertex.
    Growth {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        vertex: u32,
        #[arg(long)]
        radius: u32,
    },
    /// Smallest radius-R ball over all vertices, capped at the threshold.
    Minnbhd {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        threshold: usize,
    },
    /// Leading-order diameter for the regime of (m, delta).
    Predict {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
    },
    /// Run an experiment plan (TOML). Workers: PA_DIAM_WORKERS.
    Experiment {
        #[arg(long)]
        plan: PathBuf,
        /// Keep completed rows of an interrupted run.
        #[arg(long)]
        resume: bool,
    },
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            model,
            seed,
            out,
            binary,
        } => {
            let g = generate(model.n, model.params()?, RngSeed(seed))?;
            match out {
                Some(path) => pa_diameter::io::write_graph_file(&g, &path, binary)?,
                None if binary => write_binary(&g, BufWriter::new(std::io::stdout().lock()))?,
                None => write_text(&g, BufWriter::new(std::io::stdout().lock()))?,
            }
        }
        Command::Prob { events, model } => {
            let file = std::fs::File::open(&events)
                .with_context(|| format!("opening {}", events.display()))?;
            let event = read_event(BufReader::new(file))?;
            let params = model.params()?;
            let p = edge_set_probability(&event, model.n, params)?;
            let ln_p = ln_edge_set_probability(&event, model.n, params)?;
            println!("probability {p}");
            println!("ln_probability {ln_p}");
        }
        Command::Enumerate { model } => {
            let dist = enumerate_distribution(model.n, model.params()?)?;
            let mut out = BufWriter::new(std::io::stdout().lock());
            writeln!(out, "outcome_id,edge_sequence,probability")?;
            for (k, o) in dist.outcomes.iter().enumerate() {
                let seq: Vec<String> = dist
                    .triples(o)
                    .iter()
                    .map(|e| format!("{}:{}:{}", e.newer, e.slot, e.target))
                    .collect();
                writeln!(out, "{k},{},{}", seq.join(" "), o.probability)?;
            }
            out.flush()?;
        }
        Command::Bfs { graph, source } => {
            let g = graph.load()?;
            let d = bfs(&g, source)?;
            print_json(&json!({
                "n": g.n(),
                "source": source,
                "eccentricity": d.eccentricity(),
                "histogram": d.histogram(),
            }))?;
        }
        Command::Diameter {
            graph,
            lower_bound,
            seed,
        } => {
            let g = graph.load()?;
            match lower_bound {
                Some(samples) => print_json(&json!({
                    "n": g.n(),
                    "diameter": diameter_lower_bound(&g, samples, RngSeed(seed)),
                    "kind": "lower_bound",
                }))?,
                None => {
                    let r = diameter_exact_with_stats(&g);
                    print_json(&json!({
                        "n": g.n(),
                        "diameter": r.diameter,
                        "kind": "exact",
                        "endpoints": [r.endpoints.0, r.endpoints.1],
                        "searches": r.searches,
                    }))?;
                }
            }
        }
        Command::Typdist {
            graph,
            pairs,
            seed,
            csv,
        } => {
            let g = graph.load()?;
            let stats = typical_distance(&g, pairs, RngSeed(seed))?;
            if csv {
                let mut out = BufWriter::new(std::io::stdout().lock());
                writeln!(out, "sample,distance")?;
                for (k, d) in stats.distances.iter().enumerate() {
                    writeln!(out, "{k},{d}")?;
                }
                out.flush()?;
            } else {
                let report = DistanceReport::new(&g, None, &stats);
                print_json(&json!({
                    "report": report,
                    "median_ci": [stats.median_ci.0, stats.median_ci.1],
                }))?;
            }
        }
        Command::Growth {
            graph,
            vertex,
            radius,
        } => {
            let g = graph.load()?;
            print_json(&neighborhood_profile(&g, vertex, radius)?)?;
        }
        Command::Minnbhd {
            graph,
            radius,
            threshold,
        } => {
            let g = graph.load()?;
            let MinNeighborhood {
                size,
                vertex,
                direct_searches,
            } = min_neighborhood_size(&g, radius, threshold);
            print_json(&json!({
                "n": g.n(),
                "radius": radius,
                "threshold": threshold,
                "min_size": size,
                "vertex": vertex,
                "meets_threshold": size >= threshold,
                "direct_searches": direct_searches,
            }))?;
        }
        Command::Predict { n, m, delta } => {
            print_json(&predicted_diameter(n, Params::new(m, delta)?)?)?;
        }
        Command::Experiment { plan, resume } => {
            let plan = ExperimentPlan::from_path(&plan)
                .with_context(|| format!("loading plan {}", plan.display()))?;
            let options = RunOptions::from_env(resume);
            let rows = run_plan_with(&plan, &options)?;
            print_json(&json!({
                "rows": rows.len(),
                "workers": options.workers,
                "output": plan.output,
                "summary": side_path(&plan.output, ".summary.json"),
            }))?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
