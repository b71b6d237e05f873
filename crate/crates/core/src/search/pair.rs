use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FpSubset, PrimeField};
use crate::par;
use crate::search::canonical::is_canonical_normalized;
use crate::search::{
    cap, extend_sorted, finish, normalized_prefixes, DecompositionKind, DecompositionRecord,
    Normalization, SearchConfig, SearchOutcome, SearchParams,
};
use crate::setfun::sumset;

/// All decompositions `A + B = C_p` with `|B| = k`, one canonical record per
/// orbit.
///
/// For a fixed `B` every valid `A` lies inside `A* = ∩_j (C_p - b_j)`, and
/// coverage is monotone in `A`, so testing `A*` alone decides existence. Only
/// the maximal witness `A*` is reported.
pub fn search_pair(
    field: &Arc<PrimeField>,
    k: usize,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    field.require_cubic()?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "pair search needs k >= 2, got {k}"
        )));
    }
    cap("k", k as u64, config.max_k as u64)?;

    let p = field.p();
    let cubes = FpSubset::cubes(field);
    let cube_elems = field.cube_elements();
    // Lower prune |A| ≥ (p - 1)/(3k), from |A|·|B| ≥ |C_p|.
    let min_a = (cubes.card().div_ceil(k)).max(2);
    let prefixes = normalized_prefixes(field, k);

    let records = par::flat_map(&prefixes, |prefix| {
        let mut found = Vec::new();
        extend_sorted(prefix, k, p, &mut |b| {
            let mut a_star = cubes.clone();
            for &bj in b {
                a_star = a_star.intersection(&cubes.translate(p - bj));
                if a_star.card() < min_a {
                    return;
                }
            }
            let b_set = FpSubset::from_elements(field, b.iter().copied());
            let covers = sumset(&a_star, &b_set).map(|s| s == cubes).unwrap_or(false);
            if covers && is_canonical_normalized(field, b, &cube_elems) {
                found.push(DecompositionRecord {
                    p,
                    kind: DecompositionKind::Pair,
                    parts: vec![a_star, b_set],
                    normalization: Normalization::identity(),
                    params: SearchParams {
                        k: Some(k),
                        max_part: None,
                        exhaustive: true,
                    },
                });
            }
        });
        found
    });

    finish(
        field,
        DecompositionKind::Pair,
        records,
        SearchParams {
            k: Some(k),
            max_part: None,
            exhaustive: true,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: u64, k: usize) -> SearchOutcome {
        let f = Arc::new(PrimeField::new(p).unwrap());
        search_pair(&f, k, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn p13_has_one_orbit() {
        let out = run(13, 2);
        assert_eq!(out.records.len(), 1);
        let r = &out.records[0];
        assert_eq!(r.parts[0].to_vec(), vec![1, 8]);
        assert_eq!(r.parts[1].to_vec(), vec![0, 4]);
        assert!(out.exhaustive());
    }

    #[test]
    fn no_pairs_between_13_and_85() {
        for p in [7u64, 19, 31, 37, 43, 61, 67, 73, 79] {
            assert!(run(p, 2).records.is_empty(), "p = {p}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let f5 = Arc::new(PrimeField::new(5).unwrap());
        assert_eq!(
            search_pair(&f5, 2, &SearchConfig::default()).unwrap_err(),
            Error::WrongResidueClass(5)
        );
        let f13 = Arc::new(PrimeField::new(13).unwrap());
        assert!(search_pair(&f13, 4, &SearchConfig::default())
            .unwrap_err()
            .is_capacity());
        assert!(search_pair(&f13, 1, &SearchConfig::default()).is_err());
    }
}
