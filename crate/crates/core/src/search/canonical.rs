use crate::field::{FpSubset, PrimeField};
use crate::search::Normalization;

fn image(field: &PrimeField, elems: &[u32], lambda: u32, shift: i64) -> Vec<u32> {
    let mut v: Vec<u32> = elems
        .iter()
        .map(|&x| field.reduce(field.mul(x, lambda) as i64 + shift))
        .collect();
    v.sort_unstable();
    v
}

/// Whether the sorted set `b` (with `0 ∈ b`) is the least image of itself
/// under `x ↦ λ(x - t)` for `t ∈ b` and nonzero cubes `λ`.
pub(crate) fn is_canonical_normalized(field: &PrimeField, b: &[u32], cubes: &[u32]) -> bool {
    for &t in b {
        for &lambda in cubes {
            let shift = -(field.mul(t, lambda) as i64);
            if image(field, b, lambda, shift).as_slice() < b {
                return false;
            }
        }
    }
    true
}

/// Whether `b` is the normalized part of a canonical pair record.
pub fn is_canonical_pair(b: &FpSubset) -> bool {
    let field = b.field();
    b.contains(0) && is_canonical_normalized(field, &b.to_vec(), &field.cube_elements())
}

/// Canonical form of a pair `(A, B)` with `A + B = C_p`: over the orbit
/// `(λA + λt, λB - λt)` with `t ∈ B`, the least `(B', A')`.
pub fn canonical_pair(a: &FpSubset, b: &FpSubset) -> (FpSubset, FpSubset, Normalization) {
    let field = a.field();
    let (av, bv) = (a.to_vec(), b.to_vec());
    let mut best: Option<(Vec<u32>, Vec<u32>, u32, u32)> = None;
    for lambda in field.cube_elements() {
        for &t in &bv {
            let s = field.mul(t, lambda);
            let nb = image(field, &bv, lambda, -(s as i64));
            let na = image(field, &av, lambda, s as i64);
            if best
                .as_ref()
                .is_none_or(|(bb, ba, _, _)| (&nb, &na) < (bb, ba))
            {
                best = Some((nb, na, lambda, s));
            }
        }
    }
    let (nb, na, lambda, s) = best.expect("B is nonempty");
    (
        FpSubset::from_elements(field, na),
        FpSubset::from_elements(field, nb),
        Normalization {
            dilation: lambda,
            translations: vec![s],
        },
    )
}

/// Canonical form of a difference cover under translation and cube dilation.
pub fn canonical_diff_cover(a: &FpSubset) -> (FpSubset, Normalization) {
    let field = a.field();
    let av = a.to_vec();
    let mut best: Option<(Vec<u32>, u32, u32)> = None;
    for lambda in field.cube_elements() {
        for &t in &av {
            let s = field.mul(t, lambda);
            let na = image(field, &av, lambda, -(s as i64));
            if best.as_ref().is_none_or(|(ba, _, _)| &na < ba) {
                best = Some((na, lambda, s));
            }
        }
    }
    let (na, lambda, s) = best.expect("A is nonempty");
    (
        FpSubset::from_elements(field, na),
        Normalization {
            dilation: lambda,
            translations: vec![s],
        },
    )
}

/// Canonical form of a self-sum set under cube dilation only; translations
/// move `A + A` and are not symmetries.
pub fn canonical_self_sum(a: &FpSubset) -> (FpSubset, Normalization) {
    let field = a.field();
    let av = a.to_vec();
    let (na, lambda) = field
        .cube_elements()
        .into_iter()
        .map(|lambda| (image(field, &av, lambda, 0), lambda))
        .min()
        .expect("C_p is nonempty");
    (
        FpSubset::from_elements(field, na),
        Normalization {
            dilation: lambda,
            translations: vec![],
        },
    )
}

/// Canonical form of a triple `(A, B, C)`: `B` and `C` are normalized to
/// contain 0, ordered by (size, lexicographic), and the least
/// `(B', C', A')` over cube dilations and the admissible translations wins.
pub fn canonical_triple(
    a: &FpSubset,
    b: &FpSubset,
    c: &FpSubset,
) -> (FpSubset, FpSubset, FpSubset, Normalization) {
    let field = a.field();
    let (av, bv, cv) = (a.to_vec(), b.to_vec(), c.to_vec());
    type Key = (Vec<u32>, Vec<u32>, Vec<u32>);
    let mut best: Option<(Key, u32, Vec<u32>)> = None;
    for lambda in field.cube_elements() {
        for &tb in &bv {
            for &tc in &cv {
                let sb = field.mul(tb, lambda);
                let sc = field.mul(tc, lambda);
                let nb = image(field, &bv, lambda, -(sb as i64));
                let nc = image(field, &cv, lambda, -(sc as i64));
                let na = image(field, &av, lambda, sb as i64 + sc as i64);
                let (first, second, tr) = if (nb.len(), &nb) <= (nc.len(), &nc) {
                    (nb, nc, vec![sb, sc])
                } else {
                    (nc, nb, vec![sc, sb])
                };
                let key = (first, second, na);
                if best.as_ref().is_none_or(|(k, _, _)| &key < k) {
                    best = Some((key, lambda, tr));
                }
            }
        }
    }
    let ((first, second, na), lambda, translations) = best.expect("parts are nonempty");
    (
        FpSubset::from_elements(field, na),
        FpSubset::from_elements(field, first),
        FpSubset::from_elements(field, second),
        Normalization {
            dilation: lambda,
            translations,
        },
    )
}
