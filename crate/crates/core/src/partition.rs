//! Integer partitions.
//!
//! A [`Partition`] stores its parts weakly decreasing. Orderings of
//! partition lists are reverse-lexicographic throughout the crate, so
//! `(n)` comes first and `1^n` last.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::factorial;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    /// `1^n`.
    pub fn ones(n: usize) -> Self {
        Partition::from_sorted(vec![1; n])
    }

    /// The involution shape `2^j,1^{n-2j}`.
    pub fn involution(n: usize, j: usize) -> Result<Self> {
        if 2 * j > n {
            return Err(Error::OutOfRange { index: j, max: n / 2 });
        }
        let mut parts = vec![2; j];
        parts.extend(std::iter::repeat(1).take(n - 2 * j));
        Ok(Partition::from_sorted(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The size `n` being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part size → multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `Some(j)` when the shape is `2^j,1^{n-2j}`.
    pub fn involution_count(&self) -> Option<usize> {
        if self.parts.iter().all(|&p| p <= 2) {
            Some(self.parts.iter().filter(|&&p| p == 2).count())
        } else {
            None
        }
    }

    /// Centralizer order `z_λ = ∏ i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (part, mult)| {
                acc * BigInt::from(part).pow(mult as u32) * factorial(mult)
            })
    }

    /// `ε_λ = (-1)^{n - l(λ)}`, the sign of a permutation of this cycle type.
    pub fn sign(&self) -> i32 {
        if (self.n() - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Union of parts; `p_λ p_μ = p_{λ ∪ μ}`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted(parts)
    }

    /// True when the parts of `self` can be grouped into blocks whose sums are
    /// the parts of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> bool {
        if self.n() != coarser.n() {
            return false;
        }
        fn place(parts: &[usize], bins: &mut [usize]) -> bool {
            let Some((&first, rest)) = parts.split_first() else {
                return bins.iter().all(|&b| b == 0);
            };
            let mut tried = Vec::new();
            for k in 0..bins.len() {
                if bins[k] >= first && !tried.contains(&bins[k]) {
                    tried.push(bins[k]);
                    bins[k] -= first;
                    let ok = place(rest, bins);
                    bins[k] += first;
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        let mut bins = coarser.parts.clone();
        place(&self.parts, &mut bins)
    }
}

impl Ord for Partition {
    /// Lexicographic on the part sequence; reverse this for the canonical
    /// listing order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponential notation, e.g. `3,2^2,1^3`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (part, mult) in self.multiplicities().into_iter().rev() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{mult}")?;
            }
        }
        Ok(())
    }
}

/// Accepts `2^2,1^3`, `2,2,1,1,1`, `(4)` or `[3, 1]`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let bad = || Error::Parse(format!("bad partition {s:?}"));
        let mut parts = Vec::new();
        for term in trimmed.split(',') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (part, mult) = match term.split_once('^') {
                Some((p, m)) => (
                    p.trim().parse::<usize>().map_err(|_| bad())?,
                    m.trim().parse::<usize>().map_err(|_| bad())?,
                ),
                None => (term.parse::<usize>().map_err(|_| bad())?, 1),
            };
            parts.extend(std::iter::repeat(part).take(mult));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(prefix.clone()));
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `z_μ` as a free function.
pub fn z_order(mu: &Partition) -> BigInt {
    mu.z()
}
