use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FpSubset, PrimeField};
use crate::par;
use crate::search::{
    canonical_triple, cap, extend_sorted, finish, normalized_prefixes, DecompositionKind,
    DecompositionRecord, Normalization, SearchConfig, SearchOutcome, SearchParams,
};
use crate::setfun::{k_fold_sumset, sumset};

/// Primes beyond this admit no `A + B + C = C_p` with all parts of size ≥ 2.
pub const TRIPLE_EXCLUSION_THRESHOLD: u32 = 184_291;

fn normalized_sets(p: u32, sizes: std::ops::RangeInclusive<usize>) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for k in sizes {
        extend_sorted(&[0], k, p, &mut |s| out.push(s.to_vec()));
    }
    out
}

/// Decompositions `A + B + C = C_p` with `0 ∈ B, C` and
/// `2 ≤ |B|, |C| ≤ max_part`, reporting the maximal `A*` for each `(B, C)`.
///
/// An empty result only rules out this size-capped family, so the outcome is
/// never marked exhaustive.
pub fn search_triple(
    field: &Arc<PrimeField>,
    max_part: usize,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    field.require_cubic()?;
    let p = field.p();
    if p > TRIPLE_EXCLUSION_THRESHOLD {
        return Err(Error::ExcludedByTheorem(p));
    }
    if max_part < 2 {
        return Err(Error::InvalidArgument(format!(
            "triple search needs max_part >= 2, got {max_part}"
        )));
    }
    cap("max_part", max_part as u64, config.max_part_cap as u64)?;
    let params = SearchParams {
        k: None,
        max_part: Some(max_part),
        exhaustive: false,
    };

    let cubes = FpSubset::cubes(field);
    let mut firsts = Vec::new();
    for k in 2..=max_part {
        if k == 2 {
            firsts.extend(normalized_prefixes(field, 2));
        } else {
            for pre in normalized_prefixes(field, 2) {
                extend_sorted(&pre, k, p, &mut |s| firsts.push(s.to_vec()));
            }
        }
    }
    let seconds = normalized_sets(p, 2..=max_part);

    let records = par::flat_map(&firsts, |b| {
        let b_set = FpSubset::from_elements(field, b.iter().copied());
        let mut found = Vec::new();
        for c in &seconds {
            if (c.len(), c) < (b.len(), b) {
                continue;
            }
            let c_set = FpSubset::from_elements(field, c.iter().copied());
            let Ok(bc) = sumset(&b_set, &c_set) else {
                continue;
            };
            let mut a_star = cubes.clone();
            for s in bc.iter() {
                a_star = a_star.intersection(&cubes.translate(p - s));
                if a_star.card() < 2 {
                    break;
                }
            }
            if a_star.card() < 2 {
                continue;
            }
            let parts = vec![a_star, b_set.clone(), c_set];
            if k_fold_sumset(&parts).is_ok_and(|s| s == cubes) {
                let (ca, cb, cc, _) = canonical_triple(&parts[0], &parts[1], &parts[2]);
                if cb == parts[1] && cc == parts[2] && ca == parts[0] {
                    found.push(DecompositionRecord {
                        p,
                        kind: DecompositionKind::Triple,
                        parts,
                        normalization: Normalization::identity(),
                        params: params.clone(),
                    });
                }
            }
        }
        found
    });
    finish(field, DecompositionKind::Triple, records, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> Arc<PrimeField> {
        Arc::new(PrimeField::new(p).unwrap())
    }

    #[test]
    fn small_primes_have_no_capped_triples() {
        for p in [7, 13, 19] {
            let out = search_triple(&field(p), 2, &SearchConfig::default()).unwrap();
            assert!(out.records.is_empty(), "p = {p}");
            assert!(!out.exhaustive());
        }
    }

    #[test]
    fn refusals() {
        let f = field(184_309);
        assert_eq!(
            search_triple(&f, 2, &SearchConfig::default()).unwrap_err(),
            Error::ExcludedByTheorem(184_309)
        );
        assert!(search_triple(&field(13), 4, &SearchConfig::default())
            .unwrap_err()
            .is_capacity());
        assert!(search_triple(&field(13), 1, &SearchConfig::default()).is_err());
    }
}
