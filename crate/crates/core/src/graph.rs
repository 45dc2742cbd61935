//! Locally finite graphs, geodesic distances, balls and cut-points.
//!
//! A [`Graph`] is anything that can list the neighbours of a vertex. Finite
//! graphs additionally enumerate their vertices; infinite graphs (Cayley
//! graphs, the integer line) are described by a neighbour oracle and a
//! declared [`Structure`]. Distances default to bidirectional BFS, but a
//! graph with a closed-form metric can override [`Graph::metric_distance`].

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Shape information a solver can rely on without inspecting the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    /// Finitely many vertices, all enumerable.
    Finite,
    /// Connected and acyclic; possibly infinite.
    Tree,
    /// Connected, possibly infinite, nothing else known.
    General,
}

pub trait Graph: Sync {
    type Vertex: Clone + Ord + Hash + Debug + Send + Sync;

    /// Finite list of neighbours. Must be symmetric.
    fn neighbors(&self, v: &Self::Vertex) -> Vec<Self::Vertex>;

    fn structure(&self) -> Structure;

    /// Every vertex, for finite graphs only.
    fn vertices(&self) -> Option<Vec<Self::Vertex>> {
        None
    }

    fn contains(&self, _v: &Self::Vertex) -> bool {
        true
    }

    /// Closed-form geodesic distance, when the graph has one.
    fn metric_distance(&self, _u: &Self::Vertex, _v: &Self::Vertex) -> Option<u64> {
        None
    }

    /// `true` when the graph is known to be acyclic.
    fn is_tree(&self) -> bool {
        self.structure() == Structure::Tree
    }
}

/// Geodesic distance between `u` and `v`.
pub fn distance<G: Graph>(g: &G, u: &G::Vertex, v: &G::Vertex) -> Result<u64> {
    if let Some(d) = g.metric_distance(u, v) {
        return Ok(d);
    }
    bidirectional_bfs(g, u, v)
}

fn bidirectional_bfs<G: Graph>(g: &G, u: &G::Vertex, v: &G::Vertex) -> Result<u64> {
    if u == v {
        return Ok(0);
    }
    let mut dist_u: HashMap<G::Vertex, u64> = HashMap::from([(u.clone(), 0)]);
    let mut dist_v: HashMap<G::Vertex, u64> = HashMap::from([(v.clone(), 0)]);
    let mut front_u = vec![u.clone()];
    let mut front_v = vec![v.clone()];
    let mut depth_u = 0u64;
    let mut depth_v = 0u64;

    while !front_u.is_empty() && !front_v.is_empty() {
        // expand the smaller frontier by one full layer
        let expand_u = front_u.len() <= front_v.len();
        let (front, dist, other, depth) = if expand_u {
            (&mut front_u, &mut dist_u, &dist_v, &mut depth_u)
        } else {
            (&mut front_v, &mut dist_v, &dist_u, &mut depth_v)
        };
        *depth += 1;
        let mut best: Option<u64> = None;
        let mut next = Vec::new();
        for x in front.drain(..) {
            for y in g.neighbors(&x) {
                if dist.contains_key(&y) {
                    continue;
                }
                if let Some(&dy) = other.get(&y) {
                    let total = *depth + dy;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                dist.insert(y.clone(), *depth);
                next.push(y);
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        *front = next;
    }
    Err(Error::Unreachable(format!("{u:?}"), format!("{v:?}")))
}

/// Vertices within distance `r` of `v`, paired with their distance, in BFS order.
pub fn ball_with_distances<G: Graph>(g: &G, v: &G::Vertex, r: u64) -> Vec<(G::Vertex, u64)> {
    let mut seen: HashSet<G::Vertex> = HashSet::from([v.clone()]);
    let mut out = vec![(v.clone(), 0)];
    let mut layer = vec![v.clone()];
    for d in 1..=r {
        let mut next = Vec::new();
        for x in &layer {
            for y in g.neighbors(x) {
                if seen.insert(y.clone()) {
                    out.push((y.clone(), d));
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    out
}

/// `B_v(r)`: every vertex at distance at most `r` from `v`.
pub fn ball<G: Graph>(g: &G, v: &G::Vertex, r: u64) -> BTreeSet<G::Vertex> {
    ball_with_distances(g, v, r)
        .into_iter()
        .map(|(x, _)| x)
        .collect()
}

/// Whether removing `v` disconnects a finite graph.
pub fn is_cut_point<G: Graph>(g: &G, v: &G::Vertex) -> Result<bool> {
    let vertices = g.vertices().ok_or(Error::InfiniteGraph)?;
    if !vertices.contains(v) {
        return Err(Error::UnknownVertex(format!("{v:?}")));
    }
    let cut = BTreeSet::from([v.clone()]);
    Ok(components_without(g, &cut)?.len() > 1)
}

/// Connected components of a finite graph after deleting `cut`, each sorted,
/// listed in order of their smallest vertex.
pub fn components_without<G: Graph>(
    g: &G,
    cut: &BTreeSet<G::Vertex>,
) -> Result<Vec<BTreeSet<G::Vertex>>> {
    let mut vertices = g.vertices().ok_or(Error::InfiniteGraph)?;
    vertices.sort();
    let mut seen: HashSet<G::Vertex> = cut.iter().cloned().collect();
    let mut comps = Vec::new();
    for start in vertices {
        if !seen.insert(start.clone()) {
            continue;
        }
        let mut comp = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(&x) {
                if seen.insert(y.clone()) {
                    comp.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        comps.push(comp);
    }
    Ok(comps)
}

/// Resumable single-source BFS. Each query extends the frontier only as far
/// as needed to settle the requested target.
struct Frontier<V> {
    dist: HashMap<V, u64>,
    queue: VecDeque<V>,
}

impl<V: Clone + Eq + Hash> Frontier<V> {
    fn new(source: V) -> Self {
        Frontier {
            dist: HashMap::from([(source.clone(), 0)]),
            queue: VecDeque::from([source]),
        }
    }

    fn distance_to<G: Graph<Vertex = V>>(&mut self, g: &G, target: &V) -> Option<u64> {
        if let Some(&d) = self.dist.get(target) {
            return Some(d);
        }
        while let Some(x) = self.queue.pop_front() {
            let dx = self.dist[&x];
            let mut found = false;
            for y in g.neighbors(&x) {
                if !self.dist.contains_key(&y) {
                    found |= &y == target;
                    self.dist.insert(y.clone(), dx + 1);
                    self.queue.push_back(y);
                }
            }
            if found {
                return Some(dx + 1);
            }
        }
        None
    }
}

/// Distance oracle that memoizes one BFS frontier per source vertex.
///
/// Weight evaluation asks for `d(s, v)` for a handful of atoms `s` and many
/// candidates `v`, so frontiers grown from the atoms are reused across
/// candidates. Not `Sync`; give each worker its own cache.
pub struct DistanceCache<'g, G: Graph> {
    graph: &'g G,
    frontiers: RefCell<HashMap<G::Vertex, Frontier<G::Vertex>>>,
}

impl<'g, G: Graph> DistanceCache<'g, G> {
    pub fn new(graph: &'g G) -> Self {
        DistanceCache {
            graph,
            frontiers: RefCell::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &'g G {
        self.graph
    }

    /// Distance from `source` to `target`, growing the frontier rooted at `source`.
    pub fn distance(&self, source: &G::Vertex, target: &G::Vertex) -> Result<u64> {
        if let Some(d) = self.graph.metric_distance(source, target) {
            return Ok(d);
        }
        let mut frontiers = self.frontiers.borrow_mut();
        let frontier = frontiers
            .entry(source.clone())
            .or_insert_with(|| Frontier::new(source.clone()));
        frontier
            .distance_to(self.graph, target)
            .ok_or_else(|| Error::Unreachable(format!("{source:?}"), format!("{target:?}")))
    }
}

/// A finite simple connected graph with integer vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    ids: Vec<u64>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl ExplicitGraph {
    /// Builds a graph whose vertex set is the union of the edge endpoints.
    pub fn from_edges<I: IntoIterator<Item = (u64, u64)>>(edges: I) -> Result<Self> {
        Self::with_vertices(std::iter::empty(), edges)
    }

    /// Builds a graph from an explicit vertex list plus edges. Rejects
    /// self-loops, parallel edges and disconnected input.
    pub fn with_vertices<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = u64>,
        E: IntoIterator<Item = (u64, u64)>,
    {
        let edges: Vec<(u64, u64)> = edges.into_iter().collect();
        let mut ids: BTreeSet<u64> = vertices.into_iter().collect();
        for &(a, b) in &edges {
            ids.insert(a);
            ids.insert(b);
        }
        if ids.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let ids: Vec<u64> = ids.into_iter().collect();
        let mut adj = vec![Vec::new(); ids.len()];
        let mut seen = HashSet::new();
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("parallel edge {a} {b}")));
            }
            let ia = ids.binary_search(&a).expect("endpoint collected above");
            let ib = ids.binary_search(&b).expect("endpoint collected above");
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = ExplicitGraph {
            ids,
            adj,
            edge_count: edges.len(),
        };
        if g.component_count() != 1 {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: u64) -> Result<Self> {
        Self::with_vertices(0..n, (1..n).map(|i| (i - 1, i)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: u64) -> Result<Self> {
        Self::from_edges((0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Complete graph `K_n`.
    pub fn complete(n: u64) -> Result<Self> {
        Self::with_vertices(0..n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Star with centre `0` and leaves `1..=leaves`.
    pub fn star(leaves: u64) -> Result<Self> {
        Self::from_edges((1..=leaves).map(|i| (0, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((self.ids[i], self.ids[j]));
                }
            }
        }
        out
    }

    fn index(&self, v: u64) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    fn component_count(&self) -> usize {
        let mut seen = vec![false; self.ids.len()];
        let mut count = 0;
        for s in 0..self.ids.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    /// Distances from `source` to every vertex, indexed like [`ids`](Self::ids).
    pub fn bfs_distances(&self, source: u64) -> Result<Vec<u64>> {
        let s = self
            .index(source)
            .ok_or_else(|| Error::UnknownVertex(source.to_string()))?;
        let mut dist = vec![u64::MAX; self.ids.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == u64::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(dist)
    }
}

impl Graph for ExplicitGraph {
    type Vertex = u64;

    fn neighbors(&self, v: &u64) -> Vec<u64> {
        match self.index(*v) {
            Some(i) => self.adj[i].iter().map(|&j| self.ids[j]).collect(),
            None => Vec::new(),
        }
    }

    fn structure(&self) -> Structure {
        Structure::Finite
    }

    fn vertices(&self) -> Option<Vec<u64>> {
        Some(self.ids.clone())
    }

    fn contains(&self, v: &u64) -> bool {
        self.index(*v).is_some()
    }

    fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.ids.len()
    }
}

impl FromStr for ExplicitGraph {
    type Err = Error;

    /// One edge `u v` per line; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let mut parts = line.split_whitespace();
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => return Err(parse_err(format!("expected `u v`, got `{line}`"))),
            };
            let a: u64 = a
                .parse()
                .map_err(|_| parse_err(format!("bad vertex id `{a}`")))?;
            let b: u64 = b
                .parse()
                .map_err(|_| parse_err(format!("bad vertex id `{b}`")))?;
            edges.push((a, b));
        }
        ExplicitGraph::from_edges(edges)
    }
}

/// Graph given by a neighbour oracle. Connectivity and the declared
/// structure are the caller's contract; nothing is checked.
pub struct ImplicitGraph<V, F> {
    neighbors: F,
    structure: Structure,
    _vertex: std::marker::PhantomData<fn() -> V>,
}

impl<V, F> ImplicitGraph<V, F>
where
    F: Fn(&V) -> Vec<V>,
{
    pub fn new(neighbors: F, structure: Structure) -> Self {
        assert!(
            structure != Structure::Finite,
            "implicit graphs cannot enumerate vertices; use ExplicitGraph"
        );
        ImplicitGraph {
            neighbors,
            structure,
            _vertex: std::marker::PhantomData,
        }
    }
}

impl<V, F> Graph for ImplicitGraph<V, F>
where
    V: Clone + Ord + Hash + Debug + Send + Sync,
    F: Fn(&V) -> Vec<V> + Sync,
{
    type Vertex = V;

    fn neighbors(&self, v: &V) -> Vec<V> {
        (self.neighbors)(v)
    }

    fn structure(&self) -> Structure {
        self.structure
    }
}

/// The integer line `Z` with `d(a, b) = |a - b|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerLine;

impl Graph for IntegerLine {
    type Vertex = i64;

    fn neighbors(&self, v: &i64) -> Vec<i64> {
        vec![v - 1, v + 1]
    }

    fn structure(&self) -> Structure {
        Structure::Tree
    }

    fn metric_distance(&self, u: &i64, v: &i64) -> Option<u64> {
        Some(u.abs_diff(*v))
    }
}

/// The grid `Z^d` with the L1 metric.
#[derive(Debug, Clone, Copy)]
pub struct IntegerGrid {
    pub dim: usize,
}

impl Graph for IntegerGrid {
    type Vertex = Vec<i64>;

    fn neighbors(&self, v: &Vec<i64>) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(2 * self.dim);
        for i in 0..self.dim {
            for step in [-1, 1] {
                let mut u = v.clone();
                u[i] += step;
                out.push(u);
            }
        }
        out
    }

    fn structure(&self) -> Structure {
        if self.dim == 1 {
            Structure::Tree
        } else {
            Structure::General
        }
    }

    fn metric_distance(&self, u: &Vec<i64>, v: &Vec<i64>) -> Option<u64> {
        Some(u.iter().zip(v).map(|(a, b)| a.abs_diff(*b)).sum())
    }
}
