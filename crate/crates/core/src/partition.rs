//! Integer partitions and the combinatorics the rest of the crate leans on.
//!
//! A [`Partition`] is an immutable, weakly decreasing list of positive parts.
//! Its [`Ord`] implementation is the canonical total order used for every
//! user-visible listing: first by size, then reverse-lexicographically on the
//! parts, so `(3) < (2,1) < (1,1,1)`. Within one size this order is a linear
//! extension of the reverse of dominance: if `μ ⊵ λ` then `μ <= λ`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Builds a partition, rejecting zero or increasing parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition {parts:?} is not weakly decreasing")));
        }
        let size = parts.iter().sum();
        Ok(Self { parts, size })
    }

    /// Sorts the input and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Self { parts, size }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new(), size: 0 }
    }

    /// The one-row partition `(n)`; empty when `n == 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n], size: n }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n], size: n }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-indexed), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&r| r > j).count())
            .collect();
        Partition { parts, size: self.size }
    }

    /// Smallest `n` for which `self.pad(n)` is defined.
    pub fn min_level(&self) -> usize {
        self.size + self.first()
    }

    /// The padded partition `(n - |λ|, λ_1, …, λ_ℓ)`.
    pub fn pad(&self, n: usize) -> Result<Partition> {
        let required = self.min_level();
        if n < required {
            return Err(Error::LevelTooSmall { lambda: self.clone(), level: n, required });
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        if n > self.size {
            parts.push(n - self.size);
        }
        parts.extend_from_slice(&self.parts);
        Ok(Partition { parts, size: n })
    }

    /// Drops the first row: the inverse of [`Partition::pad`].
    pub fn unpad(&self) -> Partition {
        let parts = self.parts.iter().skip(1).copied().collect::<Vec<_>>();
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    /// Dominance order on partitions of equal size: `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size != other.size {
            return Err(Error::SizeMismatch { left: self.size, right: other.size });
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dominance between the stable families `self[n]` and `other[n]`.
    ///
    /// For any level at which both pads exist this is independent of `n`:
    /// `self[n] ⊵ other[n]` iff every tail sum `Σ_{i≥k} self_i` is at most the
    /// matching tail sum of `other`.
    pub fn stable_dominates(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (self.size, other.size);
        for i in 0..=len {
            if a > b {
                return false;
            }
            a -= self.part(i);
            b -= other.part(i);
        }
        true
    }

    /// No part value occurs `p` or more times.
    pub fn is_p_regular(&self, p: u32) -> bool {
        if p == 0 {
            return true;
        }
        let p = p as usize;
        let mut i = 0;
        while i < self.parts.len() {
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == self.parts[i] {
                j += 1;
            }
            if j - i >= p {
                return false;
            }
            i = j;
        }
        true
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// All `μ ⊆ λ` with `λ/μ` a horizontal strip, `λ` itself included.
    pub fn horizontal_strip_removals(&self) -> BTreeSet<Partition> {
        fn go(lambda: &[usize], i: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Partition>) {
            if i == lambda.len() {
                out.insert(Partition::from_unsorted(cur.clone()));
                return;
            }
            let lo = lambda.get(i + 1).copied().unwrap_or(0);
            for v in lo..=lambda[i] {
                cur.push(v);
                go(lambda, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = BTreeSet::new();
        go(&self.parts, 0, &mut Vec::new(), &mut out);
        out
    }

    /// All `ν ⊇ λ` with `ν/λ` a horizontal strip of exactly `k` cells.
    pub fn horizontal_strip_additions(&self, k: usize) -> BTreeSet<Partition> {
        // ν_1 ≥ λ_1 ≥ ν_2 ≥ λ_2 ≥ … ≥ λ_ℓ ≥ ν_{ℓ+1} ≥ 0
        fn go(
            lambda: &Partition,
            i: usize,
            left: usize,
            cur: &mut Vec<usize>,
            out: &mut BTreeSet<Partition>,
        ) {
            let base = lambda.part(i);
            if i == lambda.len() {
                // last row may take everything that is left, bounded by λ_{ℓ}
                let cap = if i == 0 { usize::MAX } else { lambda.part(i - 1) };
                if left <= cap {
                    cur.push(left);
                    out.insert(Partition::from_unsorted(cur.clone()));
                    cur.pop();
                }
                return;
            }
            let cap = if i == 0 { left } else { (lambda.part(i - 1) - base).min(left) };
            for extra in 0..=cap {
                cur.push(base + extra);
                go(lambda, i + 1, left - extra, cur, out);
                cur.pop();
            }
        }
        let mut out = BTreeSet::new();
        go(self, 0, k, &mut Vec::new(), &mut out);
        out
    }

    /// Hook lengths in row-major order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.part(j) - i - 1);
            }
        }
        hooks
    }

    /// Dimension of the characteristic-zero Specht module, by the hook length formula.
    ///
    /// Exact for `|λ| ≤ 34`; larger inputs overflow and panic.
    pub fn hook_dimension(&self) -> u64 {
        let mut num = factorial(self.size);
        for h in self.hook_lengths() {
            num /= h as u128;
        }
        u64::try_from(num).expect("hook dimension overflows u64")
    }

    /// Multiplicities `m_i` of each part value `i`, indexed from 1.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first() + 1];
        for &x in &self.parts {
            m[x] += 1;
        }
        m
    }

    /// Human form: `(4,1)`, `()` for the empty partition.
    pub fn human(&self) -> String {
        format!("({})", self.join())
    }

    /// Machine form: `[4,1]`, `[]` for the empty partition.
    pub fn machine(&self) -> String {
        format!("[{}]", self.join())
    }

    fn join(&self) -> String {
        self.parts.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size.cmp(&other.size).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.human())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.human())
    }
}

/// Accepts `4,1`, `(4,1)`, `[4,1]`, and the empty forms ``, `()`, `[]`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
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

/// All partitions of `n` in canonical order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition { parts: cur.clone(), size: cur.iter().sum() });
            return;
        }
        for v in (1..=max.min(left)).rev() {
            cur.push(v);
            go(left - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of every size `0..=n`, in canonical order.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
