//! Exhaustive, symmetry-reduced searches for decompositions of the cube set:
//! `A + B = C_p` with `|B| = k`, `A + A = C_p`, `A - A = C_p ∪ {0}` and
//! `A + B + C = C_p`.
//!
//! The symmetry group is generated by translations and dilations by nonzero
//! cubes; dilations by non-cubes move `C_p` and are never quotiented out.
//! Canonical representatives minimise the sorted element lists
//! lexicographically, normalized parts first.

mod backtrack;
mod canonical;
mod pair;
mod triple;

use std::fmt;
use std::sync::Arc;

pub use backtrack::{
    diff_cover_size_window, search_diff_cover, search_self_sum, self_sum_size_window,
};
pub use canonical::{
    canonical_diff_cover, canonical_pair, canonical_self_sum, canonical_triple, is_canonical_pair,
};
pub use pair::search_pair;
pub use triple::{search_triple, TRIPLE_EXCLUSION_THRESHOLD};

use crate::error::{Error, Result};
use crate::field::{FpSubset, PrimeField};
use crate::setfun::{difference_set, k_fold_sumset, sumset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecompositionKind {
    /// `A + B = C_p`; parts are `[A, B]` with `0 ∈ B`.
    Pair,
    /// `A + A = C_p`; parts are `[A]`.
    SelfSum,
    /// `A - A = C_p ∪ {0}`; parts are `[A]` with `0 ∈ A`.
    DiffCover,
    /// `A + B + C = C_p`; parts are `[A, B, C]` with `0 ∈ B, C`.
    Triple,
}

impl DecompositionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionKind::Pair => "pair",
            DecompositionKind::SelfSum => "selfsum",
            DecompositionKind::DiffCover => "diffcover",
            DecompositionKind::Triple => "triple",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pair" => Some(DecompositionKind::Pair),
            "selfsum" | "self_sum" => Some(DecompositionKind::SelfSum),
            "diffcover" | "diff_cover" => Some(DecompositionKind::DiffCover),
            "triple" => Some(DecompositionKind::Triple),
            _ => None,
        }
    }
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The symmetry applied to reach the stored representative: every part was
/// dilated by `dilation` (a nonzero cube), then the normalized parts were
/// translated by `-translations[i]` and the remaining part by their sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Normalization {
    pub dilation: u32,
    pub translations: Vec<u32>,
}

impl Normalization {
    pub fn identity() -> Self {
        Normalization {
            dilation: 1,
            translations: vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SearchParams {
    pub k: Option<usize>,
    pub max_part: Option<usize>,
    /// True when an empty result certifies nonexistence for the question
    /// asked (not only within a capped family).
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecompositionRecord {
    pub p: u32,
    pub kind: DecompositionKind,
    pub parts: Vec<FpSubset>,
    pub normalization: Normalization,
    pub params: SearchParams,
}

impl DecompositionRecord {
    pub fn field(&self) -> &Arc<PrimeField> {
        self.parts[0].field()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(FpSubset::card).collect()
    }

    /// Recomputes the defining sumset or difference set from scratch.
    pub fn validate(&self) -> Result<()> {
        let field = self.field();
        let cubes = FpSubset::cubes(field);
        let ok = match self.kind {
            DecompositionKind::Pair | DecompositionKind::Triple => {
                k_fold_sumset(&self.parts)? == cubes
            }
            DecompositionKind::SelfSum => sumset(&self.parts[0], &self.parts[0])? == cubes,
            DecompositionKind::DiffCover => {
                difference_set(&self.parts[0])? == FpSubset::cubes_with_zero(field)
            }
        };
        let arity = match self.kind {
            DecompositionKind::Pair => 2,
            DecompositionKind::SelfSum | DecompositionKind::DiffCover => 1,
            DecompositionKind::Triple => 3,
        };
        if ok && self.parts.len() == arity {
            Ok(())
        } else {
            Err(Error::Revalidation(format!(
                "{} record at p = {} does not reproduce its target: {}",
                self.kind,
                self.p,
                self.describe()
            )))
        }
    }

    /// The canonical representative of this record's orbit.
    pub fn canonicalize(&self) -> Self {
        let (parts, normalization) = match self.kind {
            DecompositionKind::Pair => {
                let (a, b, n) = canonical_pair(&self.parts[0], &self.parts[1]);
                (vec![a, b], n)
            }
            DecompositionKind::SelfSum => {
                let (a, n) = canonical_self_sum(&self.parts[0]);
                (vec![a], n)
            }
            DecompositionKind::DiffCover => {
                let (a, n) = canonical_diff_cover(&self.parts[0]);
                (vec![a], n)
            }
            DecompositionKind::Triple => {
                let (a, b, c, n) = canonical_triple(&self.parts[0], &self.parts[1], &self.parts[2]);
                (vec![a, b, c], n)
            }
        };
        DecompositionRecord {
            parts,
            normalization,
            ..self.clone()
        }
    }

    pub fn describe(&self) -> String {
        let names = ["A", "B", "C"];
        self.parts
            .iter()
            .zip(names)
            .map(|(s, n)| format!("{n}={s}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn sort_key(&self) -> (DecompositionKind, Vec<Vec<u32>>) {
        (
            self.kind,
            self.parts.iter().rev().map(FpSubset::to_vec).collect(),
        )
    }
}

/// Result of one search: the records plus the completeness flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub p: u32,
    pub kind: DecompositionKind,
    pub records: Vec<DecompositionRecord>,
    pub params: SearchParams,
}

impl SearchOutcome {
    pub fn exhaustive(&self) -> bool {
        self.params.exhaustive
    }
}

/// Caps that keep every search at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `|B|` accepted by [`search_pair`].
    pub max_k: usize,
    /// Largest `p` accepted by the backtracking searches.
    pub backtrack_max_p: u32,
    /// Largest part size accepted by [`search_triple`].
    pub max_part_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_k: 3,
            backtrack_max_p: 1000,
            max_part_cap: 3,
        }
    }
}

pub(crate) fn cap(what: &'static str, value: u64, cap: u64) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}

/// Validates every record, then sorts into canonical output order.
pub(crate) fn finish(
    field: &PrimeField,
    kind: DecompositionKind,
    mut records: Vec<DecompositionRecord>,
    params: SearchParams,
) -> Result<SearchOutcome> {
    for r in &records {
        r.validate()?;
    }
    records.sort_by_cached_key(DecompositionRecord::sort_key);
    records.dedup();
    Ok(SearchOutcome {
        p: field.p(),
        kind,
        records,
        params,
    })
}

/// Sorted `k`-subsets of `0..p` containing 0 whose second element is a coset
/// minimum, as element vectors. A canonical normalized set always has this
/// shape: dilating by the inverse coset representative cannot increase the
/// second element.
pub(crate) fn normalized_prefixes(field: &PrimeField, k: usize) -> Vec<Vec<u32>> {
    let p = field.p();
    let mut seconds: Vec<u32> = (1..p).filter(|&x| field.coset_min(x) == x).collect();
    seconds.dedup();
    let mut out = Vec::new();
    for b in seconds {
        if k == 2 {
            out.push(vec![0, b]);
        } else {
            for c in b + 1..p {
                out.push(vec![0, b, c]);
            }
        }
    }
    out
}

/// Extends a sorted prefix to all sorted `k`-sets with larger elements.
pub(crate) fn extend_sorted(prefix: &[u32], k: usize, p: u32, visit: &mut impl FnMut(&[u32])) {
    if prefix.len() == k {
        visit(prefix);
        return;
    }
    let start = prefix.last().map_or(0, |&x| x + 1);
    let mut buf = prefix.to_vec();
    for x in start..p {
        buf.push(x);
        extend_sorted(&buf, k, p, visit);
        buf.pop();
    }
}
