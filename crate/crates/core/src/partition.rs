//! Integer partitions: the index object for conjugacy classes and
//! irreducible characters of symmetric groups and for highest weights of
//! the classical groups.
//!
//! Partitions are immutable values. Their total order (`Ord`) is by weight
//! first and then reverse lexicographic on the parts, so for a fixed weight
//! `(3) < (2,1) < (1,1,1)`. Every expansion keyed by partitions iterates in
//! this order, which keeps serialized output byte-stable.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest weight [`enumerate`] will expand without an explicit bound.
pub const DEFAULT_ENUMERATION_BOUND: usize = 30;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Builds a partition from parts that must already be weakly decreasing.
    pub fn from_decreasing(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition::new(parts))
    }

    /// `(i^count)`, a rectangle of `count` rows of length `i`.
    pub fn rectangle(i: u32, count: usize) -> Self {
        Partition::new(vec![i; count])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `λ(i)`: how many parts equal `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Distinct parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `λ ∪ μ`: multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// All parts even (the empty partition is even).
    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// `self ⊆ other` as Young diagrams.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Centralizer order `z_λ = Π i^{λ(i)} λ(i)!`.
    pub fn z(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (i, count) in self.multiplicities() {
            acc *= BigUint::from(i).pow(count as u32);
            acc *= factorial(count);
        }
        acc
    }

    /// `λ! = Π λ(i)!`.
    pub fn multiplicity_factorial(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .map(|(_, c)| factorial(c))
            .product()
    }

    /// Sign of a permutation of this cycle type, `(-1)^{|λ| - l(λ)}`.
    pub fn sgn(&self) -> i32 {
        if (self.weight() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of permutations of this cycle type, `|λ|!/z_λ`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.weight()) / self.z()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,1,1"`. The empty string and `"0"` both denote the empty
    /// partition. Parts must be weakly decreasing.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid partition part {t:?} in {s:?}")))
                    .and_then(|p| {
                        if p == 0 {
                            Err(Error::Parse(format!("zero part in partition {s:?}")))
                        } else {
                            Ok(p)
                        }
                    })
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::from_decreasing(parts).map_err(|_| {
            Error::Parse(format!("partition parts must be weakly decreasing: {s:?}"))
        })
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Partition {
    fn from(parts: [u32; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `k` in canonical (reverse lexicographic) order.
pub fn enumerate(k: usize) -> Result<Vec<Partition>> {
    enumerate_bounded(k, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_bounded(k: usize, bound: usize) -> Result<Vec<Partition>> {
    if k > bound {
        return Err(Error::Resource {
            what: "partition weight",
            value: k,
            bound,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(k, k as u32, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: usize, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let top = max_part.min(remaining as u32);
    for p in (1..=top).rev() {
        current.push(p);
        fill(remaining - p as usize, p, current, out);
        current.pop();
    }
}

/// All partitions of every weight `0..=k`, in canonical order.
pub fn enumerate_up_to(k: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for w in 0..=k {
        out.extend(enumerate(w)?);
    }
    Ok(out)
}

/// Even partitions of `k` (all parts even), canonical order.
pub fn even_partitions(k: usize) -> Result<Vec<Partition>> {
    if k % 2 == 1 {
        return Ok(Vec::new());
    }
    Ok(enumerate(k / 2)?
        .into_iter()
        .map(|p| Partition::new(p.parts.iter().map(|x| 2 * x).collect()))
        .collect())
}

/// One way of splitting the multiset of parts of `λ` as `λ_a ∪ λ_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub a: Partition,
    pub b: Partition,
    /// `λ!/(λ_a! λ_b!)`.
    pub multiplicity: BigUint,
}

/// Every splitting `λ = λ_a ∪ λ_b` with `|λ_a| = w`, ordered by `λ_a`.
pub fn sub_splittings(lambda: &Partition, w: usize) -> Vec<Splitting> {
    let groups = lambda.multiplicities();
    let mut out = Vec::new();
    let mut chosen = vec![0usize; groups.len()];
    split_rec(&groups, 0, w, &mut chosen, &mut out);
    out.sort_by(|x, y| x.a.cmp(&y.a));
    out
}

fn split_rec(
    groups: &[(u32, usize)],
    idx: usize,
    remaining: usize,
    chosen: &mut [usize],
    out: &mut Vec<Splitting>,
) {
    if idx == groups.len() {
        if remaining != 0 {
            return;
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut m = BigUint::one();
        for (&(part, count), &c) in groups.iter().zip(chosen.iter()) {
            a.extend(std::iter::repeat_n(part, c));
            b.extend(std::iter::repeat_n(part, count - c));
            m *= binomial(count, c);
        }
        out.push(Splitting {
            a: Partition::new(a),
            b: Partition::new(b),
            multiplicity: m,
        });
        return;
    }
    let (part, count) = groups[idx];
    let max_take = count.min(remaining / part as usize);
    for c in 0..=max_take {
        chosen[idx] = c;
        split_rec(groups, idx + 1, remaining - c * part as usize, chosen, out);
    }
    chosen[idx] = 0;
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// `(2t-1)!! = (2t-1)(2t-3)...1`, with `(-1)!! = 1`.
pub fn double_factorial_odd(t: usize) -> BigUint {
    (0..t as u64).map(|i| BigUint::from(2 * i + 1)).product()
}
