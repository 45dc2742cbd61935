//! The free group `F_r` and its Cayley graph with respect to the free basis.
//!
//! Letters are signed generator indices: `+i` is `x_i`, `-i` is `x_i^-1`,
//! with `1 <= i <= r`. Words are always kept freely reduced, so the word
//! length is the geodesic distance to the identity.
//!
//! Text syntax for ranks up to 26 uses `a..z` for generators and `A..Z` for
//! their inverses (`"abA"` is `x1 x2 x1^-1`). The identity is spelled `e`
//! while `e` is not itself a generator (rank below 5) and `1` otherwise;
//! `1` and the empty string are accepted at every rank. Ranks above 26 use
//! space-separated tokens `g3 G7`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Structure};

/// A freely reduced word over `rank` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    rank: u32,
    letters: Vec<i32>,
}

impl ReducedWord {
    pub fn identity(rank: u32) -> Self {
        assert!(rank >= 1, "free group rank must be positive");
        ReducedWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_i`, `1 <= i <= rank`.
    pub fn generator(rank: u32, i: u32) -> Result<Self> {
        Self::from_letters(rank, [i as i32])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = i32>>(rank: u32, letters: I) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidWord("rank must be positive".into()));
        }
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if l == 0 || l.unsigned_abs() > rank {
                return Err(Error::InvalidWord(format!(
                    "letter {l} out of range for rank {rank}"
                )));
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(ReducedWord { rank, letters: out })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != -w[1])
    }

    pub fn inverse(&self) -> Self {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    /// Freely reduced product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut k = 0;
        let a = &self.letters;
        let b = &other.letters;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == -b[k] {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Ok(ReducedWord {
            rank: self.rank,
            letters,
        })
    }

    /// Concatenation without free reduction. Produces words that violate
    /// the reduced-word invariant; only used to inject faults into the
    /// invariant sweep.
    #[doc(hidden)]
    pub fn concat_unreduced(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(ReducedWord {
            rank: self.rank,
            letters,
        })
    }

    /// Word-metric distance `|self^-1 other|`.
    pub fn distance(&self, other: &Self) -> Result<u64> {
        self.check_rank(other)?;
        Ok(self.distance_unchecked(other))
    }

    fn distance_unchecked(&self, other: &Self) -> u64 {
        let common = self
            .letters
            .iter()
            .zip(&other.letters)
            .take_while(|(x, y)| x == y)
            .count();
        (self.letters.len() + other.letters.len() - 2 * common) as u64
    }

    /// Parses the text syntax described in the module docs.
    pub fn parse(rank: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "1" || (text == "e" && rank < 5) {
            return Self::from_letters(rank, []);
        }
        let bad = || Error::InvalidWord(format!("cannot parse `{text}` at rank {rank}"));
        let letters: Vec<i32> = if rank <= 26 {
            text.chars()
                .map(|c| match c {
                    'a'..='z' => Ok(c as i32 - 'a' as i32 + 1),
                    'A'..='Z' => Ok(-(c as i32 - 'A' as i32 + 1)),
                    _ => Err(bad()),
                })
                .collect::<Result<_>>()?
        } else {
            text.split_whitespace()
                .map(|tok| {
                    let (sign, digits) = match tok.as_bytes().first() {
                        Some(b'g') => (1, &tok[1..]),
                        Some(b'G') => (-1, &tok[1..]),
                        _ => return Err(bad()),
                    };
                    let i: i32 = digits.parse().map_err(|_| bad())?;
                    Ok(sign * i)
                })
                .collect::<Result<_>>()?
        };
        let word = Self::from_letters(rank, letters.iter().copied())?;
        if word.letters.len() != letters.len() {
            return Err(Error::InvalidWord(format!(
                "`{text}` is not freely reduced"
            )));
        }
        Ok(word)
    }
}

/// Shortlex: shorter words first, then letter by letter.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str(if self.rank < 5 { "e" } else { "1" });
        }
        if self.rank <= 26 {
            for &l in &self.letters {
                let base = if l > 0 { b'a' } else { b'A' };
                write!(f, "{}", (base + (l.unsigned_abs() - 1) as u8) as char)?;
            }
            Ok(())
        } else {
            let tokens: Vec<String> = self
                .letters
                .iter()
                .map(|&l| {
                    if l > 0 {
                        format!("g{l}")
                    } else {
                        format!("G{}", -l)
                    }
                })
                .collect();
            f.write_str(&tokens.join(" "))
        }
    }
}

impl serde::Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `|S_L|`, the number of reduced words of length exactly `length`.
pub fn sphere_size(rank: u32, length: u32) -> BigUint {
    if length == 0 {
        return BigUint::from(1u32);
    }
    let r = BigUint::from(rank);
    let two_r = &r * 2u32;
    let branch = &two_r - 1u32;
    two_r * branch.pow(length - 1)
}

/// Uniform draw from the sphere `S_L` via the non-backtracking chain: the
/// first letter is uniform over `2r` symbols and each later letter uniform
/// over the `2r - 1` symbols that do not cancel its predecessor.
pub fn sample_sphere<R: Rng + ?Sized>(rank: u32, length: u32, rng: &mut R) -> ReducedWord {
    assert!(rank >= 1, "free group rank must be positive");
    let symbols = 2 * rank;
    let mut letters: Vec<i32> = Vec::with_capacity(length as usize);
    for _ in 0..length {
        let letter = match letters.last() {
            None => symbol_letter(rng.gen_range(0..symbols)),
            Some(&prev) => {
                // skip the index of the cancelling symbol
                let forbidden = letter_symbol(-prev);
                let mut k = rng.gen_range(0..symbols - 1);
                if k >= forbidden {
                    k += 1;
                }
                symbol_letter(k)
            }
        };
        letters.push(letter);
    }
    ReducedWord { rank, letters }
}

// symbol k is x_{k/2+1}, inverted when k is odd
fn symbol_letter(k: u32) -> i32 {
    let gen = (k / 2 + 1) as i32;
    if k.is_multiple_of(2) {
        gen
    } else {
        -gen
    }
}

fn letter_symbol(l: i32) -> u32 {
    let base = (l.unsigned_abs() - 1) * 2;
    if l > 0 {
        base
    } else {
        base + 1
    }
}

/// Cayley graph of `F_r` with respect to the free basis: a `2r`-regular tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    rank: u32,
}

impl FreeGroup {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidWord("rank must be positive".into()));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn identity(&self) -> ReducedWord {
        ReducedWord::identity(self.rank)
    }

    pub fn parse(&self, text: &str) -> Result<ReducedWord> {
        ReducedWord::parse(self.rank, text)
    }

    /// The `2r` right-multiples of `w` by a generator or inverse.
    pub fn cayley_neighbors(&self, w: &ReducedWord) -> Vec<ReducedWord> {
        let r = self.rank as i32;
        (1..=r)
            .flat_map(|i| [i, -i])
            .map(|l| {
                let mut letters = w.letters.clone();
                if letters.last() == Some(&-l) {
                    letters.pop();
                } else {
                    letters.push(l);
                }
                ReducedWord {
                    rank: w.rank,
                    letters,
                }
            })
            .collect()
    }
}

impl Graph for FreeGroup {
    type Vertex = ReducedWord;

    fn neighbors(&self, v: &ReducedWord) -> Vec<ReducedWord> {
        self.cayley_neighbors(v)
    }

    fn structure(&self) -> Structure {
        Structure::Tree
    }

    fn contains(&self, v: &ReducedWord) -> bool {
        v.rank == self.rank
    }

    fn metric_distance(&self, u: &ReducedWord, v: &ReducedWord) -> Option<u64> {
        (u.rank == v.rank).then(|| u.distance_unchecked(v))
    }
}
