//! Random walks attached to a multi-vertex mean-set.
//!
//! Given a mean-set `{v1, ..., vk}` of `mu`, the walk associated with the
//! base vertex `v1` lives in `Z^(k-1)` and steps by
//! `zeta(s) = (d^2(v2,s) - d^2(v1,s), ..., d^2(vk,s) - d^2(v1,s))` with
//! probability `mu(s)`. After `n` samples its position is
//! `n (M_n(v_{i+1}) - M_n(v1))_i`, so `v1` belongs to the sample mean-set
//! exactly when the walk sits in the nonnegative orthant (once the other
//! vertices have dropped out).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceCache, Graph};
use crate::meanset::{mean_set, Class};
use crate::measure::AtomicMeasure;
use crate::Rational;

/// Default coefficient bound for the positive-vector search.
pub const DEFAULT_COEFFICIENT_BOUND: i64 = 5;

/// Largest number of coefficient vectors the positive-vector search visits.
const SEARCH_LIMIT: u64 = 2_000_000;

/// Default thinning interval of recorded walk traces.
pub const DEFAULT_TRACE_EVERY: u64 = 100;

/// One distinct increment with its aggregated probability mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementVector<V> {
    pub coords: Vec<i64>,
    /// Mass over [`IncrementSet::total`].
    pub mass: u64,
    /// Atoms producing this increment.
    pub sources: Vec<V>,
}

/// Step distribution of an associated walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementSet<V> {
    dim: usize,
    vectors: Vec<IncrementVector<V>>,
    total: u64,
}

impl<V: Clone + Ord + Debug> IncrementSet<V> {
    /// Arbitrary step distribution from `(coords, mass)` pairs. Used for
    /// walks that do not come from a mean-set, such as drift controls.
    pub fn from_steps<I: IntoIterator<Item = (Vec<i64>, u64)>>(
        dim: usize,
        steps: I,
    ) -> Result<Self> {
        let mut agg: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (coords, mass) in steps {
            if coords.len() != dim {
                return Err(Error::InvalidConfig(format!(
                    "increment {coords:?} does not have dimension {dim}"
                )));
            }
            if mass == 0 {
                continue;
            }
            *agg.entry(coords).or_insert(0) += mass;
        }
        let total = agg.values().sum();
        if total == 0 {
            return Err(Error::InvalidConfig("increments carry no mass".into()));
        }
        Ok(IncrementSet {
            dim,
            vectors: agg
                .into_iter()
                .map(|(coords, mass)| IncrementVector {
                    coords,
                    mass,
                    sources: Vec::new(),
                })
                .collect(),
            total,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[IncrementVector<V>] {
        &self.vectors
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn probability(&self, i: usize) -> Rational {
        Rational::new(self.vectors[i].mass as i128, self.total as i128)
    }

    /// `sum x P(0, x)`, coordinatewise.
    pub fn first_moment(&self) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); self.dim];
        for (i, v) in self.vectors.iter().enumerate() {
            let p = self.probability(i);
            for (acc, &x) in m.iter_mut().zip(&v.coords) {
                *acc += p * Rational::from_integer(x as i128);
            }
        }
        m
    }

    /// `sum |x|^2 P(0, x)`.
    pub fn second_moment(&self) -> Rational {
        self.vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let sq: i128 = v.coords.iter().map(|&x| (x as i128) * (x as i128)).sum();
                self.probability(i) * Rational::from_integer(sq)
            })
            .sum()
    }

    /// Rank of the lattice generated by the increments.
    pub fn genuine_dimension(&self) -> usize {
        let rows: Vec<Vec<i64>> = self.vectors.iter().map(|v| v.coords.clone()).collect();
        integer_rank(&rows)
    }
}

/// Increments of the walk associated with `base`, relative to `others`.
///
/// `base` together with `others` must be exactly the class-2 mean-set of
/// `mu`; otherwise [`Error::NotMeanSet`]. With no other vertices the walk is
/// zero-dimensional and the increment list is empty.
pub fn increments<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    base: &G::Vertex,
    others: &[G::Vertex],
) -> Result<IncrementSet<G::Vertex>> {
    let mut claimed: Vec<G::Vertex> = others.to_vec();
    claimed.push(base.clone());
    claimed.sort();
    let before = claimed.len();
    claimed.dedup();
    let actual = mean_set(g, mu, Class::Squared)?.vertices;
    if claimed.len() != before || claimed != actual {
        return Err(Error::NotMeanSet(format!("{claimed:?}")));
    }
    increments_unchecked(g, mu, base, others)
}

/// [`increments`] without the mean-set validation.
pub fn increments_unchecked<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    base: &G::Vertex,
    others: &[G::Vertex],
) -> Result<IncrementSet<G::Vertex>> {
    let dim = others.len();
    if dim == 0 {
        return Ok(IncrementSet {
            dim,
            vectors: Vec::new(),
            total: mu.total(),
        });
    }
    let cache = DistanceCache::new(g);
    let sq = |s: &G::Vertex, v: &G::Vertex| -> Result<i64> {
        let d = cache.distance(s, v)? as i64;
        Ok(d * d)
    };
    let mut agg: BTreeMap<Vec<i64>, (u64, Vec<G::Vertex>)> = BTreeMap::new();
    for (s, mass) in mu.masses() {
        let b = sq(s, base)?;
        let coords = others
            .iter()
            .map(|v| Ok(sq(s, v)? - b))
            .collect::<Result<Vec<i64>>>()?;
        let slot = agg.entry(coords).or_insert((0, Vec::new()));
        slot.0 += mass;
        slot.1.push(s.clone());
    }
    Ok(IncrementSet {
        dim,
        vectors: agg
            .into_iter()
            .map(|(coords, (mass, sources))| IncrementVector {
                coords,
                mass,
                sources,
            })
            .collect(),
        total: mu.total(),
    })
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..m.len() {
            for j in col + 1..cols {
                let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Recomputes the genuine dimension with every mean-set vertex as base.
/// All of them must agree.
pub fn dimension_invariance_check<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    mean_set: &[G::Vertex],
) -> Result<bool> {
    let mut dims = Vec::with_capacity(mean_set.len());
    for (i, base) in mean_set.iter().enumerate() {
        let others: Vec<G::Vertex> = mean_set
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        dims.push(increments_unchecked(g, mu, base, &others)?.genuine_dimension());
    }
    Ok(dims.windows(2).all(|w| w[0] == w[1]))
}

/// Outcome of the bounded search for a strictly positive lattice vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PositiveVector {
    Found(Vec<i64>),
    /// The lattice is `{0}` in positive dimension.
    Absent,
    /// No witness within the coefficient bound.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub mu_base_positive: bool,
    pub positive_vector: PositiveVector,
}

impl PositivityReport {
    /// `Some(true)` with a witness, `Some(false)` when provably absent,
    /// `None` when the search was inconclusive.
    pub fn has_positive_vector(&self) -> Option<bool> {
        match self.positive_vector {
            PositiveVector::Found(_) => Some(true),
            PositiveVector::Absent => Some(false),
            PositiveVector::Unknown => None,
        }
    }
}

/// Checks the two sufficient conditions for the orthant to have full
/// dimension inside the walk's span: `mu(base) > 0`, or a strictly positive
/// vector in the lattice of increments.
pub fn positivity_hypotheses<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    mean_set: &[G::Vertex],
    base: &G::Vertex,
    bound: i64,
) -> Result<PositivityReport> {
    let others: Vec<G::Vertex> = mean_set.iter().filter(|v| *v != base).cloned().collect();
    let incs = increments(g, mu, base, &others)?;
    Ok(PositivityReport {
        mu_base_positive: mu.mass(base) > 0,
        positive_vector: find_positive_vector(&incs, bound),
    })
}

/// Searches integer combinations with coefficients in `[-bound, bound]`.
pub fn find_positive_vector<V: Clone + Ord + Debug>(
    incs: &IncrementSet<V>,
    bound: i64,
) -> PositiveVector {
    let dim = incs.dim();
    if dim == 0 {
        return PositiveVector::Found(Vec::new());
    }
    let vectors: Vec<&Vec<i64>> = incs.vectors().iter().map(|v| &v.coords).collect();
    if let Some(v) = vectors.iter().find(|v| v.iter().all(|&x| x > 0)) {
        return PositiveVector::Found((*v).clone());
    }
    if incs.genuine_dimension() == 0 {
        return PositiveVector::Absent;
    }
    // a positive vector in a sublattice is one in the lattice, so a small
    // independent generating subset keeps the enumeration tractable
    let generators: Vec<&Vec<i64>> = if vectors.len() <= 6 {
        vectors
    } else {
        let mut basis: Vec<&Vec<i64>> = Vec::new();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for v in vectors {
            rows.push(v.clone());
            if integer_rank(&rows) > basis.len() {
                basis.push(v);
            } else {
                rows.pop();
            }
        }
        basis
    };
    let width = (2 * bound + 1) as u64;
    let count = width.checked_pow(generators.len() as u32);
    if count.is_none_or(|c| c > SEARCH_LIMIT) {
        return PositiveVector::Unknown;
    }
    let mut coeffs = vec![-bound; generators.len()];
    let mut combo = vec![0i64; dim];
    loop {
        combo.iter_mut().for_each(|x| *x = 0);
        for (c, v) in coeffs.iter().zip(&generators) {
            for (acc, &x) in combo.iter_mut().zip(v.iter()) {
                *acc += c * x;
            }
        }
        if combo.iter().all(|&x| x > 0) {
            return PositiveVector::Found(combo);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return PositiveVector::Unknown;
            }
            coeffs[i] += 1;
            if coeffs[i] <= bound {
                break;
            }
            coeffs[i] = -bound;
            i += 1;
        }
    }
}

/// The explicit bound `sum_i d^2(v1, v_{i+1}) (4 M(v1) + 4 M(v_{i+1}))` on
/// the second moment of the associated walk.
pub fn second_moment_bound<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    base: &G::Vertex,
    others: &[G::Vertex],
) -> Result<Rational> {
    let cache = DistanceCache::new(g);
    let m_base = crate::meanset::weight(g, mu, base, Class::Squared)?.as_rational();
    let mut bound = Rational::zero();
    for v in others {
        let d = cache.distance(base, v)? as i128;
        let m_v = crate::meanset::weight(g, mu, v, Class::Squared)?.as_rational();
        bound += Rational::from_integer(d * d) * (m_base * 4 + m_v * 4);
    }
    Ok(bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkState {
    pub position: Vec<i64>,
    pub step_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub steps: u64,
    /// Steps `n >= 1` after which every coordinate is nonnegative.
    pub orthant_visits: u64,
    pub last_visit: Option<u64>,
    pub final_position: Vec<i64>,
    /// Every `trace_every`-th state, starting from the origin.
    pub trace: Vec<WalkState>,
}

/// Simulates the walk for `steps` steps, counting nonnegative-orthant
/// visits. `trace_every = 0` disables the trace.
pub fn simulate_walk<V, R>(
    incs: &IncrementSet<V>,
    steps: u64,
    trace_every: u64,
    rng: &mut R,
) -> WalkReport
where
    V: Clone + Ord + Debug,
    R: Rng + ?Sized,
{
    assert!(steps >= 1, "walk needs at least one step");
    let mut cumulative = Vec::with_capacity(incs.vectors.len());
    let mut acc = 0;
    for v in &incs.vectors {
        acc += v.mass;
        cumulative.push(acc);
    }
    let mut position = vec![0i64; incs.dim];
    let mut trace = Vec::new();
    if trace_every > 0 {
        trace.push(WalkState {
            position: position.clone(),
            step_count: 0,
        });
    }
    let mut visits = 0;
    let mut last_visit = None;
    for n in 1..=steps {
        if !incs.vectors.is_empty() {
            let x = rng.gen_range(0..acc);
            let i = cumulative.partition_point(|&c| c <= x);
            for (p, &d) in position.iter_mut().zip(&incs.vectors[i].coords) {
                *p += d;
            }
        }
        if position.iter().all(|&p| p >= 0) {
            visits += 1;
            last_visit = Some(n);
        }
        if trace_every > 0 && n % trace_every == 0 {
            trace.push(WalkState {
                position: position.clone(),
                step_count: n,
            });
        }
    }
    WalkReport {
        steps,
        orthant_visits: visits,
        last_visit,
        final_position: position,
        trace,
    }
}

/// `true` iff every coordinate of `m` is zero.
pub fn is_zero_vector(m: &[Rational]) -> bool {
    m.iter().all(|x| x.is_zero())
}

/// Largest absolute coordinate; handy when reporting a nonzero first moment.
pub fn max_abs(m: &[Rational]) -> Rational {
    m.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}
