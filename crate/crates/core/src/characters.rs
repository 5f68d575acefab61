//! Irreducible characters of the symmetric group.
//!
//! A class column `λ ↦ χ^λ_μ` is the Schur expansion of the power sum
//! `p_μ = p_{μ_1} p_{μ_2} ···`. Multiplying a Schur function by `p_r` adds
//! border strips of size `r` (Murnaghan-Nakayama), which on a beta-set is a
//! single bead moving `r` positions; the sign counts the beads jumped over.
//! Columns are cached by `μ`, and the column for `μ` is built from the one
//! for `μ` with its smallest part removed, so prefixes are shared.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::factorial;
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

/// Largest weight for which [`character_table`] builds a full table.
pub const MAX_TABLE_WEIGHT: usize = 24;

/// Sparse class column `λ ↦ χ^λ_μ`; absent keys are zero.
pub type Column = HashMap<Partition, i128>;

type ColumnCache = RwLock<HashMap<Partition, Arc<Column>>>;

fn column_cache() -> &'static ColumnCache {
    static CACHE: OnceLock<ColumnCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All `ν ⊇ λ` with `ν/λ` a border strip of size `r`, with sign `(-1)^{height}`.
pub fn add_border_strips(lambda: &Partition, r: usize) -> Vec<(Partition, i128)> {
    let len = lambda.len() + r;
    let beads: Vec<usize> = lambda
        .padded(len)
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let occupied: std::collections::HashSet<usize> = beads.iter().copied().collect();
    let mut out = Vec::new();
    for (i, &b) in beads.iter().enumerate() {
        let target = b + r;
        if occupied.contains(&target) {
            continue;
        }
        let jumped = beads.iter().filter(|&&c| c > b && c < target).count();
        let mut moved = beads.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(k, &c)| c - (len - 1 - k))
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((Partition::new(parts), sign));
    }
    out
}

/// Column `λ ↦ χ^λ_μ` over all `λ ⊢ |μ|`, cached.
pub fn class_column(mu: &Partition) -> Arc<Column> {
    if let Some(col) = column_cache().read().expect("cache poisoned").get(mu) {
        return col.clone();
    }
    let col = if mu.is_empty() {
        Column::from([(Partition::empty(), 1)])
    } else {
        let parts = mu.parts();
        let (&last, head) = parts.split_last().expect("nonempty");
        let prefix = class_column(&Partition::new(head.to_vec()));
        let mut col = Column::new();
        for (lam, &c) in prefix.iter() {
            for (nu, s) in add_border_strips(lam, last) {
                *col.entry(nu).or_insert(0) += s * c;
            }
        }
        col.retain(|_, v| *v != 0);
        col
    };
    let col = Arc::new(col);
    column_cache()
        .write()
        .expect("cache poisoned")
        .insert(mu.clone(), col.clone());
    col
}

/// `χ^λ_μ` for `|λ| = |μ|`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i128> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.weight(),
            mu: mu.weight(),
        });
    }
    Ok(class_column(mu).get(lambda).copied().unwrap_or(0))
}

/// `dim V_λ = |λ|! ∏_{j<k}(λ_j - λ_k - j + k) / ∏_j (λ_j + l - j)!`.
pub fn dim_irrep(lambda: &Partition) -> BigInt {
    let l = lambda.len();
    let parts = lambda.parts();
    let mut num = factorial(lambda.weight());
    for j in 0..l {
        for k in j + 1..l {
            num *= BigInt::from(parts[j] + k - parts[k] - j);
        }
    }
    let den: BigInt = (0..l).map(|j| factorial(parts[j] + l - 1 - j)).product();
    num / den
}

/// `(-1)^{|μ| - l(μ)}`, the sign character on the class `μ`.
pub fn sign_character(mu: &Partition) -> i128 {
    if (mu.weight() - mu.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Full character table of `S_n`, rows `λ` and columns `μ`, both in
/// reverse-lexicographic order.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    /// `values[i][j] = χ^{partitions[i]}_{partitions[j]}`.
    pub values: Vec<Vec<i128>>,
    #[serde(skip)]
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<i128> {
        Some(self.values[self.index_of(lambda)?][self.index_of(mu)?])
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[i128]> {
        Some(&self.values[self.index_of(lambda)?])
    }
}

type TableCache = RwLock<HashMap<usize, Arc<CharacterTable>>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Character table of `S_n` for `n ≤ MAX_TABLE_WEIGHT`, cached per `n`.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    character_table_bounded(n, MAX_TABLE_WEIGHT)
}

pub fn character_table_bounded(n: usize, bound: usize) -> Result<Arc<CharacterTable>> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "character table weight",
            value: n,
            bound,
        });
    }
    if let Some(t) = table_cache().read().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let partitions = partitions_of(n)?;
    let columns: Vec<Arc<Column>> = partitions.par_iter().map(class_column).collect();
    let values = partitions
        .iter()
        .map(|lam| {
            columns
                .iter()
                .map(|col| col.get(lam).copied().unwrap_or(0))
                .collect()
        })
        .collect();
    let index = partitions
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let table = Arc::new(CharacterTable {
        n,
        partitions,
        values,
        index,
    });
    table_cache()
        .write()
        .expect("cache poisoned")
        .insert(n, table.clone());
    Ok(table)
}
