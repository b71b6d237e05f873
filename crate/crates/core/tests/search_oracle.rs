//! The symmetry-reduced searches against plain enumeration over small primes.

use std::collections::BTreeSet;
use std::sync::Arc;

use ffcube_core::search::{Normalization, SearchParams};
use ffcube_core::{
    search_diff_cover, search_pair, search_self_sum, DecompositionKind, DecompositionRecord,
    FpSubset, PrimeField, SearchConfig,
};

const PRIMES: [u64; 4] = [7, 13, 19, 31];

type Orbits = BTreeSet<Vec<Vec<u32>>>;

fn cubes(p: u64) -> BTreeSet<u64> {
    (1..p).map(|x| x * x % p * x % p).collect()
}

fn subsets_of(pool: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    (0u64..1 << pool.len()).map(move |m| {
        pool.iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}

fn canonical(
    field: &Arc<PrimeField>,
    kind: DecompositionKind,
    parts: &[Vec<u64>],
) -> Vec<Vec<u32>> {
    let record = DecompositionRecord {
        p: field.p(),
        kind,
        parts: parts
            .iter()
            .map(|s| FpSubset::from_elements(field, s.iter().map(|&x| x as u32)))
            .collect(),
        normalization: Normalization::identity(),
        params: SearchParams::default(),
    };
    record
        .canonicalize()
        .parts
        .iter()
        .map(FpSubset::to_vec)
        .collect()
}

fn found(records: &[DecompositionRecord]) -> Orbits {
    records
        .iter()
        .map(|r| r.parts.iter().map(FpSubset::to_vec).collect())
        .collect()
}

/// Every `A + B = C_p` with `|B| = k`, `0 ∈ B`, `|A| ≥ 2`.
fn naive_pairs(p: u64, k: usize) -> Orbits {
    let field = Arc::new(PrimeField::new(p).unwrap());
    let c = cubes(p);
    let mut out = Orbits::new();
    let tails: Vec<Vec<u64>> = match k {
        2 => (1..p).map(|x| vec![x]).collect(),
        3 => (1..p)
            .flat_map(|x| (x + 1..p).map(move |y| vec![x, y]))
            .collect(),
        _ => unimplemented!("k = {k}"),
    };
    for rest in tails {
        let mut b = vec![0];
        b.extend(rest);
        // a + b ∈ C_p for every b forces A into this pool
        let pool: Vec<u64> = (0..p)
            .filter(|a| b.iter().all(|x| c.contains(&((a + x) % p))))
            .collect();
        if pool.len() > 20 {
            panic!("pool too large at p={p}");
        }
        for a in subsets_of(&pool).filter(|a| a.len() >= 2) {
            let sum: BTreeSet<u64> = a
                .iter()
                .flat_map(|x| b.iter().map(move |y| (x + y) % p))
                .collect();
            if sum == c {
                out.insert(canonical(&field, DecompositionKind::Pair, &[a, b.clone()]));
            }
        }
    }
    out
}

fn naive_self_sums(p: u64) -> Orbits {
    let field = Arc::new(PrimeField::new(p).unwrap());
    let c = cubes(p);
    let pool: Vec<u64> = (0..p).filter(|x| c.contains(&(2 * x % p))).collect();
    subsets_of(&pool)
        .filter(|a| a.len() >= 2)
        .filter(|a| {
            a.iter()
                .flat_map(|x| a.iter().map(move |y| (x + y) % p))
                .collect::<BTreeSet<_>>()
                == c
        })
        .map(|a| canonical(&field, DecompositionKind::SelfSum, &[a]))
        .collect()
}

fn naive_diff_covers(p: u64) -> Orbits {
    let field = Arc::new(PrimeField::new(p).unwrap());
    let mut target = cubes(p);
    target.insert(0);
    let pool: Vec<u64> = cubes(p).into_iter().collect();
    subsets_of(&pool)
        .map(|mut a| {
            a.insert(0, 0);
            a
        })
        .filter(|a| a.len() >= 2)
        .filter(|a| {
            a.iter()
                .flat_map(|x| a.iter().map(move |y| (x + p - y) % p))
                .collect::<BTreeSet<_>>()
                == target
        })
        .map(|a| canonical(&field, DecompositionKind::DiffCover, &[a]))
        .collect()
}

#[test]
fn pair_search_is_complete() {
    let config = SearchConfig::default();
    for p in PRIMES {
        let field = Arc::new(PrimeField::new(p).unwrap());
        for k in 2..=3 {
            let out = search_pair(&field, k, &config).unwrap();
            assert!(out.exhaustive());
            assert_eq!(found(&out.records), naive_pairs(p, k), "p={p} k={k}");
        }
    }
}

#[test]
fn self_sum_search_is_complete() {
    let config = SearchConfig::default();
    for p in PRIMES {
        let field = Arc::new(PrimeField::new(p).unwrap());
        let out = search_self_sum(&field, &config).unwrap();
        assert!(out.exhaustive());
        assert_eq!(found(&out.records), naive_self_sums(p), "p={p}");
    }
}

#[test]
fn diff_cover_search_is_complete() {
    let config = SearchConfig::default();
    for p in PRIMES {
        let field = Arc::new(PrimeField::new(p).unwrap());
        let out = search_diff_cover(&field, &config).unwrap();
        assert!(out.exhaustive());
        assert_eq!(found(&out.records), naive_diff_covers(p), "p={p}");
    }
}

#[test]
fn known_witnesses() {
    assert_eq!(naive_pairs(13, 2).len(), 1);
    assert!(naive_pairs(19, 2).is_empty());
    assert_eq!(naive_diff_covers(7), BTreeSet::from([vec![vec![0, 1]]]));
    assert!(naive_diff_covers(13).is_empty());
}
