//! Integer partitions and the combinatorial maps indexed by them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::factorial;
use crate::error::{Error, Result};

/// Default upper bound on partition weights accepted by [`partitions_of`].
pub const DEFAULT_MAX_WEIGHT: usize = 40;

/// Weight bound in effect: `RMT_MAX_WEIGHT` if set and valid, else 40.
pub fn max_weight() -> usize {
    std::env::var("RMT_MAX_WEIGHT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_WEIGHT)
}

/// Weakly decreasing sequence of positive integers.
///
/// The derived ordering is lexicographic on the parts, so sorting a list in
/// descending order yields the reverse-lexicographic order used throughout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Builds a partition from parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Accepts only weakly decreasing parts, with trailing zeros allowed.
    pub fn from_decreasing(parts: &[usize]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition::new(parts.to_vec()))
    }

    /// `(n)`, a single row.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    /// `(part^count)`, e.g. the rectangle `(N^p)` or the class `(2^m)`.
    pub fn rectangle(part: usize, count: usize) -> Self {
        Partition::new(vec![part; count])
    }

    pub fn from_frequency(freq: &BTreeMap<usize, usize>) -> Self {
        Partition::new(
            freq.iter()
                .flat_map(|(&j, &b)| std::iter::repeat_n(j, b))
                .collect(),
        )
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` with one-based `i`, zero past the length.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1)
            .and_then(|k| self.parts.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.largest();
        Partition {
            parts: (1..=width)
                .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// True iff `self ⊆ outer` as Young diagrams.
    pub fn is_contained_in(&self, outer: &Partition) -> bool {
        self.len() <= outer.len() && self.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b)
    }

    /// Multiplicities `j -> b_j`.
    pub fn frequency(&self) -> BTreeMap<usize, usize> {
        let mut freq = BTreeMap::new();
        for &p in &self.parts {
            *freq.entry(p).or_insert(0) += 1;
        }
        freq
    }

    /// Content `j - i` of each box, row by row.
    pub fn contents(&self) -> Vec<i64> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| j as i64 - i as i64))
            .collect()
    }

    /// Hook length of each box, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let conj = &conj;
                (0..p).map(move |j| (p - j - 1) + (conj.parts[j] - i - 1) + 1)
            })
            .collect()
    }

    /// `z_μ = ∏_j j^{b_j} b_j!`.
    pub fn z_centralizer(&self) -> BigInt {
        self.frequency()
            .iter()
            .map(|(&j, &b)| BigInt::from(j).pow(b as u32) * factorial(b))
            .product()
    }

    /// `λ̃ = (p - λ'_q, ..., p - λ'_1)` for `λ ⊆ (q^p)`; lands in `(p^q)`.
    pub fn rect_complement(&self, p: usize, q: usize) -> Result<Partition> {
        if !self.is_contained_in(&Partition::rectangle(q, p)) {
            return Err(Error::NotContained {
                inner: self.to_string(),
                outer: Partition::rectangle(q, p).to_string(),
            });
        }
        let conj = self.conjugate();
        Ok(Partition::new(
            (1..=q).rev().map(|j| p - conj.part(j)).collect(),
        ))
    }

    /// Weakly decreasing parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// True when every part is even.
    pub fn all_parts_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Every partition `ν ⊆ self`, in reverse-lexicographic order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(outer: &[usize], i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == outer.len() || cap == 0 {
                out.push(Partition::new(cur.clone()));
                return;
            }
            for v in (0..=outer[i].min(cap)).rev() {
                if v == 0 {
                    out.push(Partition::new(cur.clone()));
                    continue;
                }
                cur.push(v);
                rec(outer, i + 1, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, 0, usize::MAX, &mut Vec::new(), &mut out);
        out
    }
}

/// All partitions of `n`, reverse-lexicographic: `(n), (n-1,1), ..., (1^n)`.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    let bound = max_weight();
    if n > bound {
        return Err(Error::WeightBound { weight: n, bound });
    }
    Ok(enumerate(n, n))
}

fn enumerate(n: usize, cap: usize) -> Vec<Partition> {
    fn rec(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, cap, &mut Vec::new(), &mut out);
    out
}

/// All partitions of even weight up to `max`.
pub fn even_weight_partitions_up_to(max: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for n in (0..=max).step_by(2) {
        out.extend(partitions_of(n)?);
    }
    Ok(out)
}

/// Partitions fitting in the `p × q` rectangle `(q^p)`: at most `p` parts,
/// each at most `q`.
pub fn partitions_in_rectangle(p: usize, q: usize) -> Vec<Partition> {
    Partition::rectangle(q, p).subpartitions()
}

impl fmt::Display for Partition {
    /// `4,2,1`; the empty partition prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"4,2,1"`; `""` and `"0"` give the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_decreasing(&parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
