//! Seeded Monte-Carlo experiments and randomized invariant sweeps.
//!
//! Every trial draws from its own ChaCha stream seeded by
//! [`trial_seed`]`(master, cell, trial)`, so results do not depend on
//! scheduling and any single cell or trial can be replayed in isolation.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_group::{sample_sphere, FreeGroup, ReducedWord};
use crate::graph::{components_without, distance, is_cut_point, ExplicitGraph, Graph, IntegerLine};
use crate::meanset::{
    classical_mean_gap, mean_set, mean_set_exact, mean_set_tree, sample_mean_set, Class,
};
use crate::measure::{AtomicMeasure, Sample};
use crate::multivertex::{
    dimension_invariance_check, increments, is_zero_vector, second_moment_bound,
};
use crate::Rational;

/// Seed of trial `trial` in cell `cell` under `master` (SplitMix64 mixing).
pub fn trial_seed(master: u64, cell: u64, trial: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(master) ^ cell) ^ trial)
}

pub fn trial_rng(master: u64, cell: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, cell, trial))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    TableF4,
    Slln,
    Chebyshev,
    Chernoff,
    Walk,
    Invariants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub rank: u32,
    /// Sphere radii `L` (table experiments).
    pub lengths: Vec<u32>,
    /// Sample sizes `n`, strictly increasing.
    pub samples: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Full-scale `F_4` sphere table: `L` in 5, 10, 20, 50 and `n` in 2..=16.
    pub fn table_f4(trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            kind: ExperimentKind::TableF4,
            rank: 4,
            lengths: vec![5, 10, 20, 50],
            samples: vec![2, 4, 6, 8, 10, 12, 14, 16],
            trials,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.samples.is_empty() || self.samples[0] == 0 {
            return Err(Error::InvalidConfig("sample sizes must be positive".into()));
        }
        if self.samples.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "sample sizes must be strictly increasing".into(),
            ));
        }
        if self.kind == ExperimentKind::TableF4 {
            if self.rank == 0 {
                return Err(Error::InvalidConfig("rank must be positive".into()));
            }
            if self.lengths.is_empty() {
                return Err(Error::InvalidConfig("no sphere lengths given".into()));
            }
        }
        Ok(())
    }
}

/// One `(r, L, n)` cell: how often the sample mean-set was displaced by `d`
/// from the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellResult {
    pub rank: u32,
    pub length: u32,
    pub n: u64,
    pub trials: u64,
    /// Displacement `max_{w in S_n} |w|` -> count.
    pub histogram: BTreeMap<u64, u64>,
    /// Displacement `min_{w in S_n} |w|` -> count.
    pub histogram_min: BTreeMap<u64, u64>,
}

impl CellResult {
    pub fn count(&self, d: u64) -> u64 {
        self.histogram.get(&d).copied().unwrap_or(0)
    }

    /// Counts for displacements 0, 1, 2 and 3 or more.
    pub fn flattened(&self) -> [u64; 4] {
        let mut out = [0; 4];
        for (&d, &c) in &self.histogram {
            out[(d as usize).min(3)] += c;
        }
        out
    }
}

/// One table trial: sample mean-set of `n` draws from the sphere `S_L`,
/// returning `(max, min)` distance of its elements to the identity.
pub fn table_trial(
    group: &FreeGroup,
    length: u32,
    n: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(u64, u64)> {
    let words = (0..n).map(|_| sample_sphere(group.rank(), length, rng));
    let sample = Sample::from_observations(words)?;
    let result = sample_mean_set(group, &sample, Class::Squared)?;
    let lens = result.vertices.iter().map(|w| w.len() as u64);
    let max = lens.clone().max().expect("mean-set is nonempty");
    let min = lens.min().expect("mean-set is nonempty");
    Ok((max, min))
}

/// Sphere-sampling experiment on `F_r`, one cell per `(L, n)`, sorted by
/// `L` then `n`.
pub fn run_table_experiment(cfg: &ExperimentConfig) -> Result<Vec<CellResult>> {
    cfg.validate()?;
    let group = FreeGroup::new(cfg.rank)?;
    let mut cells = Vec::new();
    for (li, &length) in cfg.lengths.iter().enumerate() {
        for (ni, &n) in cfg.samples.iter().enumerate() {
            let cell_index = (li * cfg.samples.len() + ni) as u64;
            let outcomes: Vec<(u64, u64)> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(cfg.seed, cell_index, t);
                    table_trial(&group, length, n, &mut rng)
                })
                .collect::<Result<_>>()?;
            let mut histogram = BTreeMap::new();
            let mut histogram_min = BTreeMap::new();
            for (max, min) in outcomes {
                *histogram.entry(max).or_insert(0) += 1;
                *histogram_min.entry(min).or_insert(0) += 1;
            }
            cells.push(CellResult {
                rank: cfg.rank,
                length,
                n,
                trials: cfg.trials,
                histogram,
                histogram_min,
            });
        }
    }
    Ok(cells)
}

/// Spearman rank correlation with average ranks for ties. `None` when
/// either series is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    assert_eq!(x.len(), y.len());
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayPoint {
    pub n: u64,
    pub trials: u64,
    pub misses: u64,
    pub miss_rate: f64,
    pub n_miss_rate: f64,
    /// Natural log of the miss rate; absent when no trial missed.
    pub log_miss_rate: Option<f64>,
}

/// Estimates `P(S_n != E(mu))` (or `P(S_n not a subset of E(mu))` with
/// `containment`) for each sample size.
pub fn run_decay_experiment<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    cfg: &ExperimentConfig,
    containment: bool,
) -> Result<Vec<DecayPoint>> {
    cfg.validate()?;
    let truth = mean_set(g, mu, Class::Squared)?;
    if truth.vertices.len() > 1 && !containment {
        return Err(Error::NonSingletonTruth(truth.vertices.len()));
    }
    let truth_set: BTreeSet<&G::Vertex> = truth.vertices.iter().collect();
    let mut points = Vec::with_capacity(cfg.samples.len());
    for (ci, &n) in cfg.samples.iter().enumerate() {
        let misses: u64 = (0..cfg.trials)
            .into_par_iter()
            .map(|t| -> Result<u64> {
                let mut rng = trial_rng(cfg.seed, ci as u64, t);
                let s = mu.draw(n, &mut rng);
                let sn = sample_mean_set(g, &s, Class::Squared)?;
                let got: BTreeSet<&G::Vertex> = sn.vertices.iter().collect();
                let miss = if containment {
                    !got.is_subset(&truth_set)
                } else {
                    got != truth_set
                };
                Ok(miss as u64)
            })
            .sum::<Result<u64>>()?;
        let rate = misses as f64 / cfg.trials as f64;
        points.push(DecayPoint {
            n,
            trials: cfg.trials,
            misses,
            miss_rate: rate,
            n_miss_rate: n as f64 * rate,
            log_miss_rate: (misses > 0).then(|| rate.ln()),
        });
    }
    Ok(points)
}

/// Which sample mean-sets were seen along one long sampling run of the
/// two-point measure on `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RecurrenceOutcome {
    pub saw_zero_only: bool,
    pub saw_one_only: bool,
    pub saw_both: bool,
}

impl RecurrenceOutcome {
    pub fn all_seen(&self) -> bool {
        self.saw_zero_only && self.saw_one_only && self.saw_both
    }
}

/// Samples `mu = (delta_0 + delta_1) / 2` one point at a time for `steps`
/// steps and records which of `{0}`, `{1}`, `{0, 1}` the sample mean-set
/// equals at some `n > burn_in`.
pub fn two_point_recurrence(seed: u64, steps: u64, burn_in: u64) -> Result<RecurrenceOutcome> {
    let mu = AtomicMeasure::uniform([0i64, 1])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut c0, mut c1) = (0u64, 0u64);
    let mut out = RecurrenceOutcome {
        saw_zero_only: false,
        saw_one_only: false,
        saw_both: false,
    };
    for n in 1..=steps {
        if *mu.draw(1, &mut rng).counts().next().expect("one draw").0 == 0 {
            c0 += 1;
        } else {
            c1 += 1;
        }
        if n <= burn_in {
            continue;
        }
        let sample = Sample::from_counts([(0i64, c0), (1, c1)])?;
        let sn = sample_mean_set(&IntegerLine, &sample, Class::Squared)?;
        match sn.vertices.as_slice() {
            [0] => out.saw_zero_only = true,
            [1] => out.saw_one_only = true,
            [0, 1] => out.saw_both = true,
            other => {
                return Err(Error::NotMeanSet(format!(
                    "sample mean-set {other:?} escaped the two-point mean-set"
                )))
            }
        }
        if out.all_seen() {
            break;
        }
    }
    Ok(out)
}

/// Random instance generators shared by the sweeps and tests.
pub mod generators {
    use super::*;

    /// Connected graph on `0..n`: a random recursive spanning tree plus
    /// `extra` random chords (duplicates dropped).
    pub fn connected_graph<R: Rng>(rng: &mut R, n: u64, extra: usize) -> ExplicitGraph {
        let mut edges = BTreeSet::new();
        for v in 1..n {
            edges.insert((rng.gen_range(0..v), v));
        }
        for _ in 0..extra {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        ExplicitGraph::with_vertices(0..n, edges).expect("spanning tree keeps it connected")
    }

    pub fn tree<R: Rng>(rng: &mut R, n: u64) -> ExplicitGraph {
        connected_graph(rng, n, 0)
    }

    /// Measure with `1..=max_atoms` atoms on vertices `0..n`, masses in
    /// `1..=max_mass`.
    pub fn measure<R: Rng>(
        rng: &mut R,
        n: u64,
        max_atoms: u64,
        max_mass: u64,
    ) -> AtomicMeasure<u64> {
        let k = rng.gen_range(1..=max_atoms.min(n));
        AtomicMeasure::from_masses(
            (0..k).map(|_| (rng.gen_range(0..n), rng.gen_range(1..=max_mass))),
        )
        .expect("positive masses")
    }

    pub fn word_measure<R: Rng>(
        rng: &mut R,
        rank: u32,
        max_atoms: usize,
        max_len: u32,
    ) -> AtomicMeasure<ReducedWord> {
        let k = rng.gen_range(1..=max_atoms);
        AtomicMeasure::from_masses((0..k).map(|_| {
            let len = rng.gen_range(0..=max_len);
            (sample_sphere(rank, len, rng), rng.gen_range(1..10))
        }))
        .expect("positive masses")
    }

    pub fn integer_measure<R: Rng>(rng: &mut R, max_atoms: usize, span: i64) -> AtomicMeasure<i64> {
        let k = rng.gen_range(1..=max_atoms);
        AtomicMeasure::from_masses(
            (0..k).map(|_| (rng.gen_range(-span..=span), rng.gen_range(1..50))),
        )
        .expect("positive masses")
    }

    /// Connected graph on at most `max_n` vertices that has a cut-point.
    pub fn graph_with_cut_point<R: Rng>(rng: &mut R, max_n: u64) -> ExplicitGraph {
        loop {
            let n = rng.gen_range(3..=max_n);
            let extra = rng.gen_range(0..n as usize);
            let g = connected_graph(rng, n, extra);
            if g.ids().iter().any(|v| is_cut_point(&g, v).unwrap_or(false)) {
                return g;
            }
        }
    }

    /// A finite graph and measure whose class-2 mean-set has at least two
    /// vertices, found by rejection over small symmetric-leaning families.
    pub fn multi_vertex_instance<R: Rng>(rng: &mut R) -> (ExplicitGraph, AtomicMeasure<u64>) {
        loop {
            let g = match rng.gen_range(0..4) {
                0 => ExplicitGraph::cycle(rng.gen_range(3..=9)).expect("cycle"),
                1 => ExplicitGraph::complete(rng.gen_range(2..=6)).expect("complete"),
                2 => {
                    let n = rng.gen_range(2..=10);
                    tree(rng, n)
                }
                _ => {
                    let n = rng.gen_range(2..=10);
                    let extra = rng.gen_range(0..n as usize);
                    connected_graph(rng, n, extra)
                }
            };
            let n = g.vertex_count() as u64;
            let mu = measure(rng, n, 4, 2);
            let ms = mean_set(&g, &mu, Class::Squared).expect("finite graph");
            if ms.vertices.len() >= 2 {
                return (g, mu);
            }
        }
    }
}

/// Faults that can be injected into the sweep as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Left translation concatenates without free reduction.
    SkipReduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Shift,
    Tree,
    CutPoint,
    Dimension,
    Classical,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Shift,
        Suite::Tree,
        Suite::CutPoint,
        Suite::Dimension,
        Suite::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Shift => "shift",
            Suite::Tree => "tree",
            Suite::CutPoint => "cut-point",
            Suite::Dimension => "dimension",
            Suite::Classical => "classical",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn default_cases(self) -> u64 {
        match self {
            Suite::Shift => 500,
            Suite::Tree => 200,
            Suite::CutPoint => 100,
            Suite::Dimension => 200,
            Suite::Classical => 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Overrides each suite's default case count.
    pub cases: Option<u64>,
    pub fault: Option<Fault>,
}

impl SweepConfig {
    pub fn all(seed: u64) -> Self {
        SweepConfig {
            seed,
            suites: Suite::ALL.to_vec(),
            cases: None,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: u64,
    pub failures: u64,
    /// Seed of the first failing case; replay with [`run_case`].
    pub first_failure_seed: Option<u64>,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub fault: Option<Fault>,
    pub suites: Vec<SuiteReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }
}

/// Runs every selected suite. Deterministic in the config.
pub fn run_invariant_sweep(cfg: &SweepConfig) -> SweepReport {
    let suites = cfg
        .suites
        .iter()
        .enumerate()
        .map(|(si, &suite)| {
            let cases = cfg.cases.unwrap_or_else(|| suite.default_cases());
            let outcomes: Vec<(u64, std::result::Result<(), String>)> = (0..cases)
                .into_par_iter()
                .map(|c| {
                    let seed = trial_seed(cfg.seed, si as u64, c);
                    (seed, run_case(suite, seed, cfg.fault))
                })
                .collect();
            let mut failures = 0;
            let mut first = None;
            for (seed, outcome) in outcomes {
                if let Err(msg) = outcome {
                    failures += 1;
                    first.get_or_insert((seed, msg));
                }
            }
            SuiteReport {
                suite,
                cases,
                failures,
                first_failure_seed: first.as_ref().map(|f| f.0),
                first_failure: first.map(|f| f.1),
            }
        })
        .collect();
    SweepReport {
        seed: cfg.seed,
        fault: cfg.fault,
        suites,
    }
}

/// One randomized case of `suite`, fully determined by `seed`.
pub fn run_case(suite: Suite, seed: u64, fault: Option<Fault>) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let res = match suite {
        Suite::Shift => shift_case(&mut rng, fault),
        Suite::Tree => tree_case(&mut rng),
        Suite::CutPoint => cut_point_case(&mut rng),
        Suite::Dimension => dimension_case(&mut rng),
        Suite::Classical => classical_case(&mut rng),
    };
    match res {
        Ok(Ok(())) => Ok(()),
        Ok(Err(msg)) => Err(msg),
        Err(e) => Err(format!("error: {e}")),
    }
}

type CaseResult = Result<std::result::Result<(), String>>;

fn shift_case(rng: &mut ChaCha8Rng, fault: Option<Fault>) -> CaseResult {
    let f2 = FreeGroup::new(2)?;
    let mu = generators::word_measure(rng, 2, 5, 4);
    let g = sample_sphere(2, rng.gen_range(0..=5), rng);
    let shifted = match fault {
        Some(Fault::SkipReduction) => mu.map_atoms(|h| g.concat_unreduced(h))?,
        None => mu.shift(&g)?,
    };
    let before = mean_set(&f2, &mu, Class::Squared)?;
    let after = mean_set(&f2, &shifted, Class::Squared)?;
    let mut expected: Vec<ReducedWord> = before
        .vertices
        .iter()
        .map(|v| g.multiply(v))
        .collect::<Result<_>>()?;
    expected.sort();
    if after.vertices != expected {
        return Ok(Err(format!(
            "shift by {g}: got {:?}, expected {:?}",
            after
                .vertices
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>(),
            expected.iter().map(|w| w.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(Ok(()))
}

fn tree_case(rng: &mut ChaCha8Rng) -> CaseResult {
    let n = rng.gen_range(1..=40);
    let t = generators::tree(rng, n);
    let mu = generators::measure(rng, n, 6, 20);
    let start = rng.gen_range(0..n);
    let exact = mean_set_exact(&t, &mu, Class::Squared)?;
    let tree = mean_set_tree(&t, &mu, Class::Squared, start)?;
    if tree.vertices != exact.vertices || tree.min_weight != exact.min_weight {
        return Ok(Err(format!(
            "tree {:?} vs exact {:?}",
            tree.vertices, exact.vertices
        )));
    }
    if tree.vertices.len() > 2 {
        return Ok(Err(format!("{} centres on a tree", tree.vertices.len())));
    }
    if let [a, b] = tree.vertices[..] {
        if distance(&t, &a, &b)? != 1 {
            return Ok(Err(format!("centres {a} and {b} are not adjacent")));
        }
    }
    Ok(Ok(()))
}

fn cut_point_case(rng: &mut ChaCha8Rng) -> CaseResult {
    let g = generators::graph_with_cut_point(rng, 12);
    let n = g.vertex_count() as u64;
    let mu = generators::measure(rng, n, 5, 20);
    let ms = mean_set_exact(&g, &mu, Class::Squared)?;
    let eval = crate::meanset::WeightEvaluator::new(&g, &mu, Class::Squared);
    for &v0 in g.ids() {
        if !is_cut_point(&g, &v0)? {
            continue;
        }
        let comps = components_without(&g, &BTreeSet::from([v0]))?;
        // mean-set inside one component plus the cut-point
        let touched = comps
            .iter()
            .filter(|c| ms.vertices.iter().any(|v| c.contains(v)))
            .count();
        if touched > 1 {
            return Ok(Err(format!(
                "mean-set {:?} straddles cut-point {v0}",
                ms.vertices
            )));
        }
        for (i, ci) in comps.iter().enumerate() {
            for cj in &comps[i + 1..] {
                for &v1 in ci {
                    for &v2 in cj {
                        let d01 = distance(&g, &v0, &v1)? as i128;
                        let d02 = distance(&g, &v0, &v2)? as i128;
                        let c = d02 * d01 * (d01 + d02);
                        for &s in g.ids() {
                            let sq = |a: u64| -> Result<i128> {
                                let d = distance(&g, &a, &s)? as i128;
                                Ok(d * d)
                            };
                            let lhs = d02 * (sq(v1)? - sq(v0)?) + d01 * (sq(v2)? - sq(v0)?);
                            if lhs < c || c <= 0 {
                                return Ok(Err(format!(
                                    "cut-point inequality fails at v0={v0} v1={v1} v2={v2} s={s}"
                                )));
                            }
                        }
                        let m0 = eval.numerator(&v0)?;
                        if m0 >= eval.numerator(&v1)? && m0 >= eval.numerator(&v2)? {
                            return Ok(Err(format!("M(v0) dominates at v0={v0} v1={v1} v2={v2}")));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

fn dimension_case(rng: &mut ChaCha8Rng) -> CaseResult {
    let (g, mu) = generators::multi_vertex_instance(rng);
    let ms = mean_set_exact(&g, &mu, Class::Squared)?.vertices;
    if !dimension_invariance_check(&g, &mu, &ms)? {
        return Ok(Err(format!(
            "genuine dimension depends on the base in {ms:?}"
        )));
    }
    for (i, base) in ms.iter().enumerate() {
        let others: Vec<u64> = ms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        let incs = increments(&g, &mu, base, &others)?;
        if !is_zero_vector(&incs.first_moment()) {
            return Ok(Err(format!("nonzero first moment with base {base}")));
        }
        let bound = second_moment_bound(&g, &mu, base, &others)?;
        if incs.second_moment() > bound {
            return Ok(Err(format!(
                "second moment {} above bound {bound}",
                incs.second_moment()
            )));
        }
    }
    Ok(Ok(()))
}

fn classical_case(rng: &mut ChaCha8Rng) -> CaseResult {
    let mu = generators::integer_measure(rng, 6, 30);
    let gap = classical_mean_gap(&mu)?;
    if !(1..=2).contains(&gap.mean_set.len()) {
        return Ok(Err(format!("mean-set {:?} has bad size", gap.mean_set)));
    }
    if gap.gap > Rational::new(1, 2) {
        return Ok(Err(format!("gap {} exceeds 1/2", gap.gap)));
    }
    Ok(Ok(()))
}
