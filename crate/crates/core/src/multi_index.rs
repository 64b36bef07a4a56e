//! Multi-indices and their graded lexicographic enumeration.
//!
//! Jets and truncated Taylor polynomials store one coefficient per
//! multi-index `α` with `|α| <= k`. The storage order is graded
//! lexicographic: first by order `|α|`, then lexicographically descending
//! within an order, so for `n = 2, k = 2` the sequence is
//! `(0,0), (1,0), (0,1), (2,0), (1,1), (0,2)`. Serialized jets follow the same
//! order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::math::{binomial, factorial};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit multi-index `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|α|`
    pub fn order(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `α!`
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.leq(self) {
            return None;
        }
        Some(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `binom(α, ν) = Π binom(α_i, ν_i)`
    pub fn binomial(&self, nu: &MultiIndex) -> f64 {
        self.0
            .iter()
            .zip(&nu.0)
            .map(|(&a, &b)| binomial(a as u64, b as u64))
            .product()
    }

    /// `z^α` for a displacement vector `z`.
    pub fn monomial(&self, z: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(z)
            .map(|(&a, &zi)| crate::math::powi(zi, a as i32))
            .product()
    }

    /// All `ν <= α` componentwise, in graded lexicographic order.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let set = MultiIndexSet::new(self.dim(), self.order());
        set.iter().filter(|nu| nu.leq(self)).cloned().collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// Number of multi-indices in `n` variables with order at most `k`,
/// i.e. `binom(n + k, n)`.
pub fn count(n: usize, k: usize) -> usize {
    binomial((n + k) as u64, n as u64) as usize
}

/// All multi-indices in `n` variables of order exactly `m`, lexicographically
/// descending.
pub fn of_order(n: usize, m: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, m, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, remaining: usize, out: &mut Vec<MultiIndex>) {
    let n = cur.len();
    if pos + 1 == n {
        cur[pos] = remaining as u32;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        cur[pos] = a as u32;
        fill(cur, pos + 1, remaining - a, out);
    }
}

/// The graded lexicographic list of all `α` with `|α| <= k`, with reverse
/// lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiIndexSet {
    n: usize,
    k: usize,
    list: Vec<MultiIndex>,
    lookup: BTreeMap<MultiIndex, usize>,
}

impl MultiIndexSet {
    pub fn new(n: usize, k: usize) -> Self {
        let mut list = Vec::with_capacity(count(n, k));
        for m in 0..=k {
            list.extend(of_order(n, m));
        }
        let lookup = list
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        MultiIndexSet { n, k, list, lookup }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_order(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.list[i]
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.lookup.get(alpha).copied()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, MultiIndex> {
        self.list.iter()
    }

    pub fn as_slice(&self) -> &[MultiIndex] {
        &self.list
    }

    /// Indices of the entries with `|α| = m`.
    pub fn order_range(&self, m: usize) -> core::ops::Range<usize> {
        let start = if m == 0 { 0 } else { count(self.n, m - 1) };
        start..count(self.n, m)
    }
}
