//! Weight functions and mean-set solvers.
//!
//! For a measure `mu` and class `c`, the weight of a vertex is
//! `M(v) = sum_s d(v, s)^c mu(s)` and the mean-set is its argmin. All
//! comparisons are exact: a measure stores integer masses over a common
//! total, so weights of one measure are compared through their integer
//! numerators.
//!
//! Solvers:
//! * [`mean_set_exact`] scans every vertex of a finite graph.
//! * [`mean_set_bounded`] scans the ball `B_v(3r)` around the heaviest atom,
//!   where `r` is the smallest radius holding half of `M(v)`; no minimizer
//!   lies outside it.
//! * [`mean_set_tree`] runs [`direct_descent`] and collects the tied
//!   neighbourhood of the local minimum. On a tree the weight is convex
//!   along geodesics, so every local minimum is global.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ball_with_distances, DistanceCache, Graph, Structure};
use crate::measure::{AtomicMeasure, Sample};
use crate::Rational;

/// Default step bound for [`direct_descent`].
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

/// Exponent `c` of the weight function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    /// `c = 1`, a median analogue.
    Linear,
    /// `c = 2`, the default.
    Squared,
}

impl Class {
    pub fn from_exponent(c: u32) -> Result<Self> {
        match c {
            1 => Ok(Class::Linear),
            2 => Ok(Class::Squared),
            _ => Err(Error::InvalidConfig(format!(
                "class must be 1 or 2, got {c}"
            ))),
        }
    }

    pub fn exponent(self) -> u32 {
        match self {
            Class::Linear => 1,
            Class::Squared => 2,
        }
    }

    fn apply(self, d: u64) -> u128 {
        let d = d as u128;
        match self {
            Class::Linear => d,
            Class::Squared => d * d,
        }
    }
}

/// Exact nonnegative rational weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightValue(pub Rational);

impl WeightValue {
    pub fn zero() -> Self {
        WeightValue(Rational::zero())
    }

    pub fn as_rational(&self) -> Rational {
        self.0
    }
}

impl fmt::Display for WeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for WeightValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Bounded,
    Descent,
    Degenerate,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Bounded => "bounded",
            Method::Descent => "descent",
            Method::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanSetResult<V> {
    /// Minimizers in ascending vertex order.
    pub vertices: Vec<V>,
    pub min_weight: WeightValue,
    pub class: Class,
    pub method: Method,
    /// Descent steps, zero for scanning solvers.
    pub steps: u64,
    /// Number of vertices whose weight was evaluated.
    pub examined: usize,
}

impl<V: Ord> MeanSetResult<V> {
    pub fn vertex_set(&self) -> BTreeSet<&V> {
        self.vertices.iter().collect()
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// Memoizing weight oracle for one measure on one graph.
///
/// Numerators `sum_s mass(s) d(v, s)^c` share the denominator
/// `mu.total()`, so ordering numerators orders weights.
pub struct WeightEvaluator<'a, G: Graph> {
    cache: DistanceCache<'a, G>,
    mu: &'a AtomicMeasure<G::Vertex>,
    class: Class,
    memo: RefCell<HashMap<G::Vertex, u128>>,
}

impl<'a, G: Graph> WeightEvaluator<'a, G> {
    pub fn new(g: &'a G, mu: &'a AtomicMeasure<G::Vertex>, class: Class) -> Self {
        WeightEvaluator {
            cache: DistanceCache::new(g),
            mu,
            class,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn numerator(&self, v: &G::Vertex) -> Result<u128> {
        if let Some(&n) = self.memo.borrow().get(v) {
            return Ok(n);
        }
        let mut sum: u128 = 0;
        for (s, mass) in self.mu.masses() {
            let d = self
                .cache
                .distance(s, v)
                .map_err(|_| Error::UnreachableAtom {
                    atom: format!("{s:?}"),
                    from: format!("{v:?}"),
                })?;
            let term = (mass as u128)
                .checked_mul(self.class.apply(d))
                .ok_or(Error::Overflow("weight"))?;
            sum = sum.checked_add(term).ok_or(Error::Overflow("weight"))?;
        }
        self.memo.borrow_mut().insert(v.clone(), sum);
        Ok(sum)
    }

    pub fn to_weight(&self, numerator: u128) -> WeightValue {
        let n = i128::try_from(numerator).expect("weight numerator fits in i128");
        WeightValue(Rational::new(n, self.mu.total() as i128))
    }

    pub fn weight(&self, v: &G::Vertex) -> Result<WeightValue> {
        Ok(self.to_weight(self.numerator(v)?))
    }

    pub fn evaluated(&self) -> usize {
        self.memo.borrow().len()
    }

    pub fn distance(&self, u: &G::Vertex, v: &G::Vertex) -> Result<u64> {
        self.cache.distance(u, v)
    }
}

/// `M^(c)(v) = sum_s d(v, s)^c mu(s)`.
pub fn weight<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    v: &G::Vertex,
    class: Class,
) -> Result<WeightValue> {
    WeightEvaluator::new(g, mu, class).weight(v)
}

fn degenerate<G: Graph>(
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
) -> Option<MeanSetResult<G::Vertex>> {
    (mu.support_len() == 1).then(|| MeanSetResult {
        vertices: vec![mu.heaviest_atom().clone()],
        min_weight: WeightValue::zero(),
        class,
        method: Method::Degenerate,
        steps: 0,
        examined: 0,
    })
}

fn check_support<G: Graph>(g: &G, mu: &AtomicMeasure<G::Vertex>) -> Result<()> {
    match mu.support().find(|s| !g.contains(s)) {
        Some(s) => Err(Error::UnknownVertex(format!("{s:?}"))),
        None => Ok(()),
    }
}

/// Exact argmin collector over a stream of candidates.
struct Argmin<V> {
    best: Option<u128>,
    vertices: Vec<V>,
}

impl<V: Ord> Argmin<V> {
    fn new() -> Self {
        Argmin {
            best: None,
            vertices: Vec::new(),
        }
    }

    fn offer(&mut self, v: V, numerator: u128) {
        match self.best {
            Some(b) if numerator > b => {}
            Some(b) if numerator == b => self.vertices.push(v),
            _ => {
                self.best = Some(numerator);
                self.vertices = vec![v];
            }
        }
    }

    fn finish(mut self) -> (Vec<V>, u128) {
        self.vertices.sort();
        (self.vertices, self.best.expect("at least one candidate"))
    }
}

/// Mean-set of a finite graph by evaluating the weight at every vertex.
pub fn mean_set_exact<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
) -> Result<MeanSetResult<G::Vertex>> {
    let vertices = g.vertices().ok_or(Error::InfiniteGraph)?;
    check_support(g, mu)?;
    if let Some(r) = degenerate::<G>(mu, class) {
        return Ok(r);
    }
    let eval = WeightEvaluator::new(g, mu, class);
    let mut argmin = Argmin::new();
    for v in vertices {
        let n = eval.numerator(&v)?;
        argmin.offer(v, n);
    }
    let (vertices, best) = argmin.finish();
    Ok(MeanSetResult {
        vertices,
        min_weight: eval.to_weight(best),
        class,
        method: Method::Exact,
        steps: 0,
        examined: eval.evaluated(),
    })
}

/// Certificate that the mean-set lies inside `B_{v0}(r)`.
///
/// Returns `true` iff
/// `sum_{s : d(v0,s) > r/2} d(v0,s) mu(s) - (r/2) mu(v0) < 0`, evaluated
/// exactly. When it holds, every `u` with `d(v0,u) > r` has
/// `M(u) > M(v0)`.
pub fn certify_radius<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    v0: &G::Vertex,
    r: u64,
) -> Result<bool> {
    let cache = DistanceCache::new(g);
    // scaled by 2 * total to stay in integers
    let mut lhs: i128 = -((r as i128) * mu.mass(v0) as i128);
    for (s, mass) in mu.masses() {
        let d = cache.distance(s, v0).map_err(|_| Error::UnreachableAtom {
            atom: format!("{s:?}"),
            from: format!("{v0:?}"),
        })?;
        if 2 * d > r {
            lhs += 2 * d as i128 * mass as i128;
        }
    }
    Ok(lhs < 0)
}

/// Smallest `r` with `M(v) <= 2 sum_{s in B_v(r)} d(v,s)^c mu(s)`.
pub fn half_mass_radius<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    v: &G::Vertex,
    class: Class,
) -> Result<u64> {
    let cache = DistanceCache::new(g);
    let mut terms: Vec<(u64, u128)> = Vec::with_capacity(mu.support_len());
    for (s, mass) in mu.masses() {
        let d = cache.distance(s, v).map_err(|_| Error::UnreachableAtom {
            atom: format!("{s:?}"),
            from: format!("{v:?}"),
        })?;
        terms.push((d, mass as u128 * class.apply(d)));
    }
    terms.sort_unstable();
    let total: u128 = terms.iter().map(|t| t.1).sum();
    let mut inside: u128 = 0;
    let mut r = 0u64;
    for (d, t) in terms {
        if 2 * inside >= total {
            break;
        }
        inside += t;
        r = d;
    }
    Ok(r)
}

/// Mean-set of any locally finite graph with finitely supported `mu`,
/// found by scanning the ball `B_v(3r)` around the heaviest atom `v`,
/// with `r` from [`half_mass_radius`].
pub fn mean_set_bounded<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
) -> Result<MeanSetResult<G::Vertex>> {
    check_support(g, mu)?;
    if let Some(r) = degenerate::<G>(mu, class) {
        return Ok(r);
    }
    let center = mu.heaviest_atom();
    let r = half_mass_radius(g, mu, center, class)?;
    mean_set_in_ball(g, mu, class, center, 3 * r, Method::Bounded)
}

/// Exact argmin of the weight over `B_center(radius)`.
pub fn mean_set_in_ball<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
    center: &G::Vertex,
    radius: u64,
    method: Method,
) -> Result<MeanSetResult<G::Vertex>> {
    let eval = WeightEvaluator::new(g, mu, class);
    let mut argmin = Argmin::new();
    for (v, _) in ball_with_distances(g, center, radius) {
        let n = eval.numerator(&v)?;
        argmin.offer(v, n);
    }
    let (vertices, best) = argmin.finish();
    Ok(MeanSetResult {
        vertices,
        min_weight: eval.to_weight(best),
        class,
        method,
        steps: 0,
        examined: eval.evaluated(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent<V, W> {
    pub vertex: V,
    pub value: W,
    pub steps: u64,
}

/// Direct descent: move to the neighbour with the smallest strictly smaller
/// value of `f` (ties broken by vertex order) until no neighbour improves.
pub fn direct_descent<G, W, F>(
    g: &G,
    mut f: F,
    start: G::Vertex,
    max_steps: u64,
) -> Result<Descent<G::Vertex, W>>
where
    G: Graph,
    W: Ord + Clone,
    F: FnMut(&G::Vertex) -> Result<W>,
{
    let mut current = start;
    let mut value = f(&current)?;
    let mut steps = 0u64;
    loop {
        let mut best: Option<(W, G::Vertex)> = None;
        for u in g.neighbors(&current) {
            let fu = f(&u)?;
            if fu >= value {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bw, bv)) => (&fu, &u) < (bw, bv),
            };
            if better {
                best = Some((fu, u));
            }
        }
        match best {
            None => {
                return Ok(Descent {
                    vertex: current,
                    value,
                    steps,
                })
            }
            Some((w, u)) => {
                steps += 1;
                if steps > max_steps {
                    return Err(Error::NonTermination(max_steps));
                }
                current = u;
                value = w;
            }
        }
    }
}

/// Descent from `start`, then the connected set of neighbours tied with
/// the local minimum. Complete on trees; a heuristic elsewhere.
pub fn mean_set_descent<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
    start: G::Vertex,
    max_steps: u64,
) -> Result<MeanSetResult<G::Vertex>> {
    check_support(g, mu)?;
    if !g.contains(&start) {
        return Err(Error::UnknownVertex(format!("{start:?}")));
    }
    if let Some(r) = degenerate::<G>(mu, class) {
        return Ok(r);
    }
    let eval = WeightEvaluator::new(g, mu, class);
    let descent = direct_descent(g, |v| eval.numerator(v), start, max_steps)?;
    let best = descent.value;
    let mut found = BTreeSet::from([descent.vertex.clone()]);
    let mut queue = VecDeque::from([descent.vertex]);
    while let Some(x) = queue.pop_front() {
        for u in g.neighbors(&x) {
            if !found.contains(&u) && eval.numerator(&u)? == best {
                found.insert(u.clone());
                queue.push_back(u);
            }
        }
    }
    Ok(MeanSetResult {
        vertices: found.into_iter().collect(),
        min_weight: eval.to_weight(best),
        class,
        method: Method::Descent,
        steps: descent.steps,
        examined: eval.evaluated(),
    })
}

/// Mean-set on a tree by direct descent from `start`.
pub fn mean_set_tree<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
    start: G::Vertex,
) -> Result<MeanSetResult<G::Vertex>> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    mean_set_descent(g, mu, class, start, DEFAULT_MAX_STEPS)
}

/// Mean-set with the solver suited to the graph: full scan for finite
/// graphs, descent from the heaviest atom on trees, bounded ball scan
/// otherwise.
pub fn mean_set<G: Graph>(
    g: &G,
    mu: &AtomicMeasure<G::Vertex>,
    class: Class,
) -> Result<MeanSetResult<G::Vertex>> {
    match g.structure() {
        Structure::Finite => mean_set_exact(g, mu, class),
        Structure::Tree => mean_set_tree(g, mu, class, mu.heaviest_atom().clone()),
        Structure::General => mean_set_bounded(g, mu, class),
    }
}

/// Sample mean-set: the mean-set of the empirical measure.
pub fn sample_mean_set<G: Graph>(
    g: &G,
    sample: &Sample<G::Vertex>,
    class: Class,
) -> Result<MeanSetResult<G::Vertex>> {
    mean_set(g, &sample.empirical(), class)
}

/// Comparison of the class-2 mean-set on `Z` with the classical mean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalGap {
    pub mean: Rational,
    pub mean_set: Vec<i64>,
    /// `max_{v in E} |m - v|`.
    pub gap: Rational,
}

/// Classical mean `m = sum n mu(n)` against the class-2 mean-set on the
/// integer line.
pub fn classical_mean_gap(mu: &AtomicMeasure<i64>) -> Result<ClassicalGap> {
    let line = crate::graph::IntegerLine;
    let result = mean_set(&line, mu, Class::Squared)?;
    let mean: Rational = mu
        .weights()
        .map(|(&n, w)| w * Rational::from_integer(n as i128))
        .sum();
    let gap = result
        .vertices
        .iter()
        .map(|&v| (mean - Rational::from_integer(v as i128)).abs())
        .max()
        .expect("mean-set is nonempty");
    Ok(ClassicalGap {
        mean,
        mean_set: result.vertices,
        gap,
    })
}

/// Weighted medians of an integer-supported measure: the integers `m`
/// with `mu(<= m) >= 1/2` and `mu(>= m) >= 1/2`, as a closed interval.
pub fn median_interval(mu: &AtomicMeasure<i64>) -> (i64, i64) {
    let total = mu.total();
    let mut below = 0u64;
    let mut lo = None;
    let mut hi = None;
    for (&v, m) in mu.masses() {
        let above = total - below;
        below += m;
        if lo.is_none() && 2 * below >= total {
            lo = Some(v);
        }
        if 2 * above >= total {
            hi = Some(v);
        }
    }
    (lo.expect("nonempty"), hi.expect("nonempty"))
}
