//! `meanset-lab`: mean-set solver and experiment runner.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use meanset::experiments::{
    run_decay_experiment, run_invariant_sweep, run_table_experiment, DecayPoint, ExperimentConfig,
    ExperimentKind, Fault, Suite, SweepConfig,
};
use meanset::free_group::FreeGroup;
use meanset::graph::{ExplicitGraph, Graph, IntegerLine};
use meanset::meanset::{
    mean_set, mean_set_bounded, mean_set_descent, mean_set_exact, Class, DEFAULT_MAX_STEPS,
};
use meanset::measure::{parse_measure, AtomicMeasure};
use meanset::multivertex::{
    increments, positivity_hypotheses, simulate_walk, PositiveVector, DEFAULT_COEFFICIENT_BOUND,
    DEFAULT_TRACE_EVERY,
};

#[derive(Parser)]
#[command(
    name = "meanset-lab",
    version,
    about = "Mean-sets of measures on graphs and groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean-set of a measure given in a file.
    Meanset(MeansetArgs),
    /// Sphere-sampling convergence table on a free group.
    TableF4(TableArgs),
    /// Miss-rate decay of the sample mean-set.
    Decay(DecayArgs),
    /// Associated random walk of a multi-vertex mean-set.
    Walk(WalkArgs),
    /// Randomized invariant suites.
    Check(CheckArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpaceArgs {
    /// Edge-list file of a finite graph.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Cayley graph of the free group of this rank.
    #[arg(long)]
    free_rank: Option<u32>,
    /// The integer line.
    #[arg(long)]
    line: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverMethod {
    Auto,
    Exact,
    Descent,
    Bounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct MeansetArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long)]
    measure: PathBuf,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
    class: u32,
    #[arg(long, value_enum, default_value_t = SolverMethod::Auto)]
    method: SolverMethod,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the extension of `--out`, else CSV.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        self.format
            .unwrap_or_else(|| match self.out.as_deref().and_then(Path::extension) {
                Some(ext) if ext == "json" => Format::Json,
                _ => Format::Csv,
            })
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 4)]
    rank: u32,
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,50")]
    lengths: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "2,4,6,8,10,12,14,16")]
    samples: Vec<u64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DecayArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long)]
    measure: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32,64")]
    samples: Vec<u64>,
    #[arg(long, default_value_t = 2000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Count a miss only when S_n leaves the mean-set.
    #[arg(long)]
    containment: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct WalkArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long)]
    measure: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    steps: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Base vertex of the walk; the smallest mean-set vertex by default.
    #[arg(long)]
    base: Option<String>,
    /// Coefficient bound of the positive-vector search.
    #[arg(long, default_value_t = DEFAULT_COEFFICIENT_BOUND)]
    bound: i64,
}

#[derive(Args)]
struct CheckArgs {
    /// `all` or a comma-separated list of shift, tree, cut-point,
    /// dimension, classical.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Cases per suite instead of each suite's default.
    #[arg(long)]
    cases: Option<u64>,
    /// Skip free reduction in left translation.
    #[arg(long)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Meanset(a) => run_meanset(&a),
        Command::TableF4(a) => run_table(&a),
        Command::Decay(a) => run_decay(&a),
        Command::Walk(a) => run_walk(&a),
        Command::Check(a) => run_check(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Runs `body` against the space selected by `space`, with measures read
/// in that space's vertex syntax.
macro_rules! with_space {
    ($space:expr, $measure:expr, |$g:ident, $mu:ident, $parse:ident| $body:expr) => {{
        let text = read($measure)?;
        if let Some(path) = &$space.graph {
            let $g: ExplicitGraph = read(path)?.parse()?;
            let $parse = |s: &str| -> meanset::Result<u64> {
                s.parse()
                    .map_err(|_| meanset::Error::UnknownVertex(s.to_string()))
            };
            let $mu = parse_measure(&text, $parse)?;
            $body
        } else if let Some(rank) = $space.free_rank {
            let $g = FreeGroup::new(rank)?;
            let $parse = |s: &str| $g.parse(s);
            let $mu = parse_measure(&text, $parse)?;
            $body
        } else {
            let $g = IntegerLine;
            let $parse = |s: &str| -> meanset::Result<i64> {
                s.parse()
                    .map_err(|_| meanset::Error::UnknownVertex(s.to_string()))
            };
            let $mu = parse_measure(&text, $parse)?;
            $body
        }
    }};
}

fn run_meanset(a: &MeansetArgs) -> Result<ExitCode> {
    let class = Class::from_exponent(a.class)?;
    with_space!(a.space, &a.measure, |g, mu, _parse| solve(
        &g, &mu, class, a.method
    ))
}

fn solve<G>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
    method: SolverMethod,
) -> Result<ExitCode>
where
    G: Graph,
    G::Vertex: Display,
{
    let res = match method {
        SolverMethod::Auto => mean_set(g, mu, class)?,
        SolverMethod::Exact => mean_set_exact(g, mu, class)?,
        SolverMethod::Bounded => mean_set_bounded(g, mu, class)?,
        SolverMethod::Descent => {
            mean_set_descent(g, mu, class, mu.heaviest_atom().clone(), DEFAULT_MAX_STEPS)?
        }
    };
    let out = json!({
        "vertices": res.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "min_weight": res.min_weight,
        "method": res.method.to_string(),
        "steps": res.steps,
        "class": class.exponent(),
    });
    print!("{}", to_json(&out)?);
    Ok(ExitCode::SUCCESS)
}

fn run_table(a: &TableArgs) -> Result<ExitCode> {
    let cfg = ExperimentConfig {
        kind: ExperimentKind::TableF4,
        rank: a.rank,
        lengths: a.lengths.clone(),
        samples: a.samples.clone(),
        trials: a.trials,
        seed: a.seed,
    };
    let cells = run_table_experiment(&cfg)?;
    let text = match a.output.format() {
        Format::Json => to_json(&json!({
            "config": cfg,
            "displacement": "max",
            "secondary_displacement": "min",
            "cells": cells,
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "rank",
                "length",
                "n",
                "trials",
                "d0",
                "d1",
                "d2",
                "d3plus",
                "min_d0",
                "min_d1",
                "min_d2",
                "min_d3plus",
            ])?;
            for c in &cells {
                let mut mins = [0u64; 4];
                for (&d, &k) in &c.histogram_min {
                    mins[(d as usize).min(3)] += k;
                }
                let mut row = vec![
                    c.rank.to_string(),
                    c.length.to_string(),
                    c.n.to_string(),
                    c.trials.to_string(),
                ];
                row.extend(c.flattened().iter().chain(&mins).map(u64::to_string));
                w.write_record(&row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    a.output.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_decay(a: &DecayArgs) -> Result<ExitCode> {
    let cfg = ExperimentConfig {
        kind: ExperimentKind::Chebyshev,
        rank: a.space.free_rank.unwrap_or(0),
        lengths: Vec::new(),
        samples: a.samples.clone(),
        trials: a.trials,
        seed: a.seed,
    };
    let points = with_space!(a.space, &a.measure, |g, mu, _parse| run_decay_experiment(
        &g,
        &mu,
        &cfg,
        a.containment
    )?);
    a.output.emit(&decay_text(
        &cfg,
        &points,
        a.containment,
        a.output.format(),
    )?)?;
    Ok(ExitCode::SUCCESS)
}

fn decay_text(
    cfg: &ExperimentConfig,
    points: &[DecayPoint],
    containment: bool,
    format: Format,
) -> Result<String> {
    Ok(match format {
        Format::Json => {
            to_json(&json!({ "config": cfg, "containment": containment, "points": points }))?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "n",
                "trials",
                "misses",
                "miss_rate",
                "n_miss_rate",
                "log_miss_rate",
            ])?;
            for p in points {
                w.write_record([
                    p.n.to_string(),
                    p.trials.to_string(),
                    p.misses.to_string(),
                    p.miss_rate.to_string(),
                    p.n_miss_rate.to_string(),
                    p.log_miss_rate.map(|x| x.to_string()).unwrap_or_default(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn run_walk(a: &WalkArgs) -> Result<ExitCode> {
    with_space!(a.space, &a.measure, |g, mu, parse| {
        let base = a.base.as_deref().map(parse).transpose()?;
        walk(&g, &mu, base, a)
    })
}

fn walk<G>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    base: Option<G::Vertex>,
    a: &WalkArgs,
) -> Result<ExitCode>
where
    G: Graph,
    G::Vertex: Display,
{
    let ms = mean_set(g, mu, Class::Squared)?.vertices;
    let base = match base {
        Some(b) if ms.contains(&b) => b,
        Some(b) => bail!("base {b} is not in the mean-set"),
        None => ms[0].clone(),
    };
    let others: Vec<G::Vertex> = ms.iter().filter(|v| **v != base).cloned().collect();
    let incs = increments(g, mu, &base, &others)?;
    let hyp = positivity_hypotheses(g, mu, &ms, &base, a.bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let report = simulate_walk(&incs, a.steps, DEFAULT_TRACE_EVERY, &mut rng);
    let positive = match &hyp.positive_vector {
        PositiveVector::Found(c) => json!({ "status": "found", "coefficients": c }),
        PositiveVector::Absent => json!({ "status": "absent" }),
        PositiveVector::Unknown => json!({ "status": "unknown" }),
    };
    let out = json!({
        "mean_set": ms.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "base": base.to_string(),
        "dimension": incs.genuine_dimension(),
        "walk_dimension": incs.dim(),
        "first_moment": incs.first_moment().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "second_moment": incs.second_moment().to_string(),
        "hypotheses": {
            "mu_base_positive": hyp.mu_base_positive,
            "positive_vector": positive,
        },
        "steps": report.steps,
        "orthant_visits": report.orthant_visits,
        "last_visit": report.last_visit,
        "final_position": report.final_position,
    });
    print!("{}", to_json(&out)?);
    Ok(ExitCode::SUCCESS)
}

fn run_check(a: &CheckArgs) -> Result<ExitCode> {
    let suites = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        a.suite
            .split(',')
            .map(|s| Suite::parse(s.trim()).with_context(|| format!("unknown suite {s:?}")))
            .collect::<Result<Vec<_>>>()?
    };
    let cfg = SweepConfig {
        seed: a.seed,
        suites,
        cases: a.cases,
        fault: a.inject_fault.then_some(Fault::SkipReduction),
    };
    let report = run_invariant_sweep(&cfg);
    print!("{}", to_json(&report)?);
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
