//! Finitely supported probability measures with exact rational weights.
//!
//! A measure is stored as positive integer masses over a common total, so
//! `mu(v) = mass(v) / total` exactly. Masses are divided by their gcd on
//! construction, which makes the representation canonical.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::free_group::ReducedWord;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicMeasure<V: Ord> {
    masses: BTreeMap<V, u64>,
    total: u64,
}

impl<V: Ord + Clone + Debug> AtomicMeasure<V> {
    /// Normalizes unnormalized positive masses. Repeated vertices add up.
    pub fn from_masses<I: IntoIterator<Item = (V, u64)>>(atoms: I) -> Result<Self> {
        let mut masses: BTreeMap<V, u64> = BTreeMap::new();
        for (v, m) in atoms {
            if m == 0 {
                return Err(Error::InvalidMeasure(format!("atom {v:?} has zero mass")));
            }
            let slot = masses.entry(v).or_insert(0);
            *slot = slot.checked_add(m).ok_or(Error::Overflow("measure mass"))?;
        }
        if masses.is_empty() {
            return Err(Error::InvalidMeasure("measure has empty support".into()));
        }
        let g = masses.values().fold(0u64, |acc, &m| acc.gcd(&m));
        let mut total = 0u64;
        for m in masses.values_mut() {
            *m /= g;
            total = total
                .checked_add(*m)
                .ok_or(Error::Overflow("measure total"))?;
        }
        Ok(AtomicMeasure { masses, total })
    }

    /// Exact rational weights that must be positive and sum to one.
    pub fn from_weights<I: IntoIterator<Item = (V, Rational)>>(atoms: I) -> Result<Self> {
        let atoms: Vec<(V, Rational)> = atoms.into_iter().collect();
        let mut sum = Rational::zero();
        let mut denom: i128 = 1;
        for (v, w) in &atoms {
            if *w <= Rational::zero() {
                return Err(Error::InvalidMeasure(format!("atom {v:?} has weight {w}")));
            }
            sum += *w;
            denom = denom.lcm(w.denom());
            if denom > u64::MAX as i128 {
                return Err(Error::Overflow("common denominator"));
            }
        }
        if sum != Rational::from_integer(1) {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Self::from_masses(atoms.into_iter().map(|(v, w)| {
            let m = w.numer() * (denom / w.denom());
            (v, m as u64)
        }))
    }

    pub fn point_mass(v: V) -> Self {
        AtomicMeasure {
            masses: BTreeMap::from([(v, 1)]),
            total: 1,
        }
    }

    /// Uniform measure on the given (deduplicated) vertices.
    pub fn uniform<I: IntoIterator<Item = V>>(vertices: I) -> Result<Self> {
        Self::from_masses(vertices.into_iter().map(|v| (v, 1)))
    }

    pub fn weight(&self, v: &V) -> Rational {
        match self.masses.get(v) {
            Some(&m) => Rational::new(m as i128, self.total as i128),
            None => Rational::zero(),
        }
    }

    /// Integer mass of `v` over [`total`](Self::total).
    pub fn mass(&self, v: &V) -> u64 {
        self.masses.get(v).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn masses(&self) -> impl Iterator<Item = (&V, u64)> {
        self.masses.iter().map(|(v, &m)| (v, m))
    }

    pub fn weights(&self) -> impl Iterator<Item = (&V, Rational)> + '_ {
        self.masses
            .iter()
            .map(|(v, &m)| (v, Rational::new(m as i128, self.total as i128)))
    }

    pub fn support(&self) -> impl Iterator<Item = &V> {
        self.masses.keys()
    }

    pub fn support_len(&self) -> usize {
        self.masses.len()
    }

    /// Atom of largest mass; ties go to the smallest vertex.
    pub fn heaviest_atom(&self) -> &V {
        let mut best: Option<(&V, u64)> = None;
        for (v, &m) in &self.masses {
            if best.is_none_or(|(_, bm)| m > bm) {
                best = Some((v, m));
            }
        }
        best.expect("support is nonempty").0
    }

    /// Relabels every atom through `f`, merging atoms that collide.
    pub fn map_atoms<W, F>(&self, mut f: F) -> Result<AtomicMeasure<W>>
    where
        W: Ord + Clone + Debug,
        F: FnMut(&V) -> Result<W>,
    {
        let mut atoms = Vec::with_capacity(self.masses.len());
        for (v, &m) in &self.masses {
            atoms.push((f(v)?, m));
        }
        AtomicMeasure::from_masses(atoms)
    }

    /// Total variation distance `1/2 sum |mu(v) - nu(v)|`.
    pub fn total_variation(&self, other: &Self) -> Rational {
        let mut sum = Rational::zero();
        for (v, w) in self.weights() {
            sum += (w - other.weight(v)).abs();
        }
        for (v, w) in other.weights() {
            if !self.masses.contains_key(v) {
                sum += w;
            }
        }
        sum / Rational::from_integer(2)
    }

    /// `n` i.i.d. draws by inversion of the exact cumulative masses.
    pub fn draw<R: Rng + ?Sized>(&self, n: u64, rng: &mut R) -> Sample<V> {
        assert!(n >= 1, "sample size must be positive");
        let atoms: Vec<&V> = self.masses.keys().collect();
        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut acc = 0u64;
        for &m in self.masses.values() {
            acc += m;
            cumulative.push(acc);
        }
        let mut counts: Vec<u64> = vec![0; atoms.len()];
        for _ in 0..n {
            let x = rng.gen_range(0..self.total);
            let i = cumulative.partition_point(|&c| c <= x);
            counts[i] += 1;
        }
        Sample {
            counts: atoms
                .into_iter()
                .zip(counts)
                .filter(|&(_, c)| c > 0)
                .map(|(v, c)| (v.clone(), c))
                .collect(),
            n,
        }
    }
}

impl AtomicMeasure<ReducedWord> {
    /// Left translation by `g`: the atom at `h` moves to `g h`.
    pub fn shift(&self, g: &ReducedWord) -> Result<Self> {
        self.map_atoms(|h| g.multiply(h))
    }
}

/// Observed vertices with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample<V: Ord> {
    counts: BTreeMap<V, u64>,
    n: u64,
}

impl<V: Ord + Clone + Debug> Sample<V> {
    pub fn from_counts<I: IntoIterator<Item = (V, u64)>>(counts: I) -> Result<Self> {
        let mut map: BTreeMap<V, u64> = BTreeMap::new();
        for (v, c) in counts {
            if c > 0 {
                *map.entry(v).or_insert(0) += c;
            }
        }
        let n: u64 = map.values().sum();
        if n == 0 {
            return Err(Error::InvalidMeasure("sample is empty".into()));
        }
        Ok(Sample { counts: map, n })
    }

    pub fn from_observations<I: IntoIterator<Item = V>>(obs: I) -> Result<Self> {
        Self::from_counts(obs.into_iter().map(|v| (v, 1)))
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn counts(&self) -> impl Iterator<Item = (&V, u64)> {
        self.counts.iter().map(|(v, &c)| (v, c))
    }

    pub fn count(&self, v: &V) -> u64 {
        self.counts.get(v).copied().unwrap_or(0)
    }

    /// Relative frequency measure `mu_n(u) = |{i : xi_i = u}| / n`.
    pub fn empirical(&self) -> AtomicMeasure<V> {
        AtomicMeasure::from_masses(self.counts.iter().map(|(v, &c)| (v.clone(), c)))
            .expect("sample counts are positive")
    }
}

/// Parses a measure file: one `vertex mass` pair per line, `#` comments.
///
/// Masses are positive integers, exact decimals (`0.25`) or fractions
/// (`3/8`); they are normalized by their sum.
pub fn parse_measure<V, F>(text: &str, mut parse_vertex: F) -> Result<AtomicMeasure<V>>
where
    V: Ord + Clone + Debug,
    F: FnMut(&str) -> Result<V>,
{
    let mut atoms: Vec<(V, Rational)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let parts: Vec<&str> = line.split_whitespace().collect();
        let Some((mass_tok, vertex_toks)) = parts.split_last() else {
            continue;
        };
        if vertex_toks.is_empty() {
            return Err(err(format!("expected `vertex mass`, got `{line}`")));
        }
        // word tokens for ranks above 26 contain spaces
        let vertex = parse_vertex(&vertex_toks.join(" ")).map_err(|e| err(e.to_string()))?;
        let mass = parse_mass(mass_tok).map_err(err)?;
        atoms.push((vertex, mass));
    }
    if atoms.is_empty() {
        return Err(Error::InvalidMeasure("measure file has no atoms".into()));
    }
    let mut denom: i128 = 1;
    for (_, m) in &atoms {
        denom = denom.lcm(m.denom());
        if denom > u64::MAX as i128 {
            return Err(Error::Overflow("common denominator"));
        }
    }
    let mut scaled = Vec::with_capacity(atoms.len());
    for (v, m) in atoms {
        let x = m.numer() * (denom / m.denom());
        let x = x.to_u64().ok_or(Error::Overflow("measure mass"))?;
        scaled.push((v, x));
    }
    AtomicMeasure::from_masses(scaled)
}

fn parse_mass(tok: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("mass `{tok}` is not a positive integer, exact decimal or fraction");
    let value = if let Some((p, q)) = tok.split_once('/') {
        let p: i128 = p.parse().map_err(|_| bad())?;
        let q: i128 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Rational::new(p, q)
    } else if let Some((whole, frac)) = tok.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: i128 = if whole.is_empty() {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let f: i128 = frac.parse().map_err(|_| bad())?;
        let scale = 10i128.pow(frac.len() as u32);
        Rational::new(whole * scale + f, scale)
    } else {
        Rational::from_integer(tok.parse().map_err(|_| bad())?)
    };
    if value <= Rational::zero() {
        return Err(bad());
    }
    Ok(value)
}
