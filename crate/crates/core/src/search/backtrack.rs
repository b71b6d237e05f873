use std::sync::Arc;

use crate::bounds;
use crate::error::Result;
use crate::field::{FpSubset, PrimeField};
use crate::par;
use crate::search::{
    canonical_diff_cover, canonical_self_sum, cap, finish, DecompositionKind, DecompositionRecord,
    Normalization, SearchConfig, SearchOutcome, SearchParams,
};
use crate::setfun::{difference_set, sumset};

/// Admissible sizes `lo..=hi` for `A + A = C_p`, or `None` when empty.
pub fn self_sum_size_window(p: u32) -> Option<(usize, usize)> {
    let p = p as u64;
    let lo = (1..).find(|&a| bounds::self_sum_lower(a, p).holds)?;
    let hi = (1..)
        .take_while(|&a| bounds::le_sqrt_p(a, p).holds)
        .last()?;
    (lo <= hi).then_some((lo as usize, hi as usize))
}

/// Admissible sizes `lo..=hi` for `A - A = C_p ∪ {0}`, or `None` when empty.
pub fn diff_cover_size_window(p: u32) -> Option<(usize, usize)> {
    let p = p as u64;
    let cubes = (p - 1) / 3;
    let lo = (2..).find(|&a| bounds::diff_cover_lower(a, p).holds && a * (a - 1) >= cubes)?;
    let hi = (1..)
        .take_while(|&a| bounds::golden_ratio_bound(a, p).holds)
        .last()?;
    (lo <= hi).then_some((lo as usize, hi as usize))
}

fn and_above(a: &[u64], b: &[u64], x: u32) -> Vec<u64> {
    let (w, bit) = (x as usize / 64, x % 64);
    a.iter()
        .zip(b)
        .enumerate()
        .map(|(i, (u, v))| match i.cmp(&w) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => u & v & (!0u64).checked_shl(bit + 1).unwrap_or(0),
            std::cmp::Ordering::Greater => u & v,
        })
        .collect()
}

fn popcount(v: &[u64]) -> usize {
    v.iter().map(|w| w.count_ones() as usize).sum()
}

fn bits(v: &[u64]) -> impl Iterator<Item = u32> + '_ {
    v.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros();
                w &= w - 1;
                i as u32 * 64 + b
            })
        })
    })
}

/// Enumerates the cliques `cur ∪ S` with `S ⊆ cand`, `|cur ∪ S| ∈ [lo, hi]`,
/// where `nbr[x]` lists the elements compatible with `x`.
fn cliques(
    cur: &mut Vec<u32>,
    cand: &[u64],
    nbr: &[Vec<u64>],
    lo: usize,
    hi: usize,
    visit: &mut impl FnMut(&[u32]),
) {
    if cur.len() >= lo {
        visit(cur);
    }
    if cur.len() == hi || cur.len() + popcount(cand) < lo {
        return;
    }
    for x in bits(cand) {
        let next = and_above(cand, &nbr[x as usize], x);
        cur.push(x);
        cliques(cur, &next, nbr, lo, hi, visit);
        cur.pop();
    }
}

fn neighbourhoods(
    field: &Arc<PrimeField>,
    within: &FpSubset,
    shift: impl Fn(u32) -> u32,
) -> Vec<Vec<u64>> {
    let cubes = FpSubset::cubes(field);
    (0..field.p())
        .map(|x| {
            if within.contains(x) {
                cubes
                    .translate(shift(x))
                    .intersection(within)
                    .words()
                    .to_vec()
            } else {
                vec![0; within.words().len()]
            }
        })
        .collect()
}

/// All `A` with `A + A = C_p`, one record per orbit under cube dilation.
pub fn search_self_sum(field: &Arc<PrimeField>, config: &SearchConfig) -> Result<SearchOutcome> {
    field.require_cubic()?;
    let p = field.p();
    cap("p", p as u64, config.backtrack_max_p as u64)?;
    let params = SearchParams {
        k: None,
        max_part: None,
        exhaustive: true,
    };
    let Some((lo, hi)) = self_sum_size_window(p) else {
        return finish(field, DecompositionKind::SelfSum, vec![], params);
    };

    let cubes = FpSubset::cubes(field);
    // x + x ∈ C_p for every x ∈ A.
    let vertices = FpSubset::from_predicate(field, |x| field.is_cube(field.add(x, x)));
    let nbr = neighbourhoods(field, &vertices, |x| p - x);
    // The least element of a canonical set is a coset minimum, and no other
    // element has a smaller coset minimum.
    let firsts: Vec<u32> = vertices
        .iter()
        .filter(|&x| field.coset_min(x) == x)
        .collect();

    let records = par::flat_map(&firsts, |&x| {
        let allowed = FpSubset::from_predicate(field, |y| field.coset_min(y) >= x);
        let cand = and_above(&nbr[x as usize], allowed.words(), x);
        let mut found = Vec::new();
        cliques(&mut vec![x], &cand, &nbr, lo, hi, &mut |a| {
            let set = FpSubset::from_elements(field, a.iter().copied());
            if sumset(&set, &set).is_ok_and(|s| s == cubes) && canonical_self_sum(&set).0 == set {
                found.push(DecompositionRecord {
                    p,
                    kind: DecompositionKind::SelfSum,
                    parts: vec![set],
                    normalization: Normalization::identity(),
                    params: params.clone(),
                });
            }
        });
        found
    });
    finish(field, DecompositionKind::SelfSum, records, params)
}

/// All `A` with `A - A = C_p ∪ {0}`, one record per orbit under translation
/// and cube dilation. Canonical sets contain `{0, 1}`.
pub fn search_diff_cover(field: &Arc<PrimeField>, config: &SearchConfig) -> Result<SearchOutcome> {
    field.require_cubic()?;
    let p = field.p();
    cap("p", p as u64, config.backtrack_max_p as u64)?;
    let params = SearchParams {
        k: None,
        max_part: None,
        exhaustive: true,
    };
    let Some((lo, hi)) = diff_cover_size_window(p) else {
        return finish(field, DecompositionKind::DiffCover, vec![], params);
    };

    let cubes = FpSubset::cubes(field);
    let target = FpSubset::cubes_with_zero(field);
    // Further elements differ from both 0 and 1 by a cube.
    let pool = cubes.intersection(&cubes.translate(1));
    let nbr = neighbourhoods(field, &pool, |x| x);
    let accept = |a: &[u32], found: &mut Vec<DecompositionRecord>| {
        let set = FpSubset::from_elements(field, a.iter().copied());
        if difference_set(&set).is_ok_and(|d| d == target) && canonical_diff_cover(&set).0 == set {
            found.push(DecompositionRecord {
                p,
                kind: DecompositionKind::DiffCover,
                parts: vec![set],
                normalization: Normalization::identity(),
                params: params.clone(),
            });
        }
    };

    let mut records = Vec::new();
    if lo <= 2 {
        accept(&[0, 1], &mut records);
    }
    if hi >= 3 {
        let thirds = pool.to_vec();
        records.extend(par::flat_map(&thirds, |&x| {
            let cand = and_above(&nbr[x as usize], pool.words(), x);
            let mut found = Vec::new();
            cliques(&mut vec![0, 1, x], &cand, &nbr, lo.max(3), hi, &mut |a| {
                accept(a, &mut found)
            });
            found
        }));
    }
    finish(field, DecompositionKind::DiffCover, records, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn field(p: u64) -> Arc<PrimeField> {
        Arc::new(PrimeField::new(p).unwrap())
    }

    #[test]
    fn windows() {
        assert_eq!(self_sum_size_window(13), Some((3, 3)));
        assert_eq!(self_sum_size_window(7), Some((2, 2)));
        assert_eq!(diff_cover_size_window(7), Some((2, 4)));
        assert_eq!(diff_cover_size_window(13).map(|w| w.0), Some(3));
    }

    #[test]
    fn diff_cover_small_primes() {
        let out = search_diff_cover(&field(7), &SearchConfig::default()).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].parts[0].to_vec(), vec![0, 1]);
        assert!(search_diff_cover(&field(13), &SearchConfig::default())
            .unwrap()
            .records
            .is_empty());
    }

    #[test]
    fn self_sum_small_primes() {
        for p in [7, 13, 19, 31] {
            let out = search_self_sum(&field(p), &SearchConfig::default()).unwrap();
            assert!(out.records.is_empty(), "p = {p}");
            assert!(out.exhaustive());
        }
    }

    #[test]
    fn caps_and_classes() {
        let cfg = SearchConfig {
            backtrack_max_p: 10,
            ..SearchConfig::default()
        };
        assert!(search_diff_cover(&field(13), &cfg)
            .unwrap_err()
            .is_capacity());
        assert_eq!(
            search_self_sum(&field(11), &SearchConfig::default()).unwrap_err(),
            Error::WrongResidueClass(11)
        );
    }

    #[test]
    fn bit_helpers() {
        let v = vec![u64::MAX, u64::MAX];
        let w = and_above(&v, &v, 63);
        assert_eq!(w, vec![0, u64::MAX]);
        let w = and_above(&v, &v, 3);
        assert_eq!(bits(&w).next(), Some(4));
        assert_eq!(popcount(&w), 124);
    }
}
