//! Exact algebra of subsets and functions on `F_p`: sumsets, difference sets,
//! representation counts, the correlation `∘` and convolution `∗` operators,
//! inner products and the multi-point correlations `C_{k+1}`.

mod function;

use std::sync::Arc;

pub use function::{correlation, FpFunction, ValueHistogram};

use crate::error::{Error, Result};
use crate::field::{FpSubset, PrimeField};

pub(crate) fn same_field(a: &PrimeField, b: &PrimeField) -> Result<()> {
    if a.p() == b.p() {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a.p(), b.p()))
    }
}

/// `C_p` as a subset.
pub fn cubes(field: &Arc<PrimeField>) -> FpSubset {
    FpSubset::cubes(field)
}

/// `A + B`, as a union of rotated copies of the larger operand.
pub fn sumset(a: &FpSubset, b: &FpSubset) -> Result<FpSubset> {
    same_field(a.field(), b.field())?;
    let (small, large) = if a.card() <= b.card() { (a, b) } else { (b, a) };
    let mut acc = vec![0u64; large.words().len()];
    for s in small.iter() {
        large.or_rotated_into(&mut acc, s as usize);
    }
    Ok(FpSubset::with_bits(a.field(), acc))
}

/// Whether `A + B` equals `target`.
pub fn sumset_equals(a: &FpSubset, b: &FpSubset, target: &FpSubset) -> Result<bool> {
    Ok(&sumset(a, b)? == target)
}

/// Left fold of [`sumset`].
pub fn k_fold_sumset(sets: &[FpSubset]) -> Result<FpSubset> {
    let (first, rest) = sets
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("k_fold_sumset needs at least one set".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, s| sumset(&acc, s))
}

/// `A - A`.
pub fn difference_set(a: &FpSubset) -> Result<FpSubset> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    sumset(a, &a.negate())
}

/// `r_{A,B}(x) = |{(a, b) ∈ A × B : a + b = x}|`.
pub fn representation_count(a: &FpSubset, b: &FpSubset, x: u32) -> Result<usize> {
    same_field(a.field(), b.field())?;
    let f = a.field();
    Ok(a.iter().filter(|&y| b.contains(f.sub(x, y))).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> Arc<PrimeField> {
        Arc::new(PrimeField::new(p).unwrap())
    }

    fn set(f: &Arc<PrimeField>, e: &[u32]) -> FpSubset {
        FpSubset::from_elements(f, e.iter().copied())
    }

    #[test]
    fn sumset_examples() {
        let f13 = field(13);
        assert_eq!(
            sumset(&set(&f13, &[1, 5]), &set(&f13, &[0, 7])).unwrap(),
            cubes(&f13)
        );
        let a = set(&f13, &[2, 3, 11]);
        assert_eq!(sumset(&a, &set(&f13, &[0])).unwrap(), a);
        let f7 = field(7);
        assert_eq!(
            sumset(&set(&f7, &[0, 1]), &set(&f7, &[0, 1]))
                .unwrap()
                .to_vec(),
            vec![0, 1, 2]
        );
        assert_eq!(
            sumset(&set(&f7, &[0]), &set(&f13, &[0])).unwrap_err(),
            Error::FieldMismatch(7, 13)
        );
    }

    #[test]
    fn k_fold_examples() {
        let f = field(13);
        let parts = [set(&f, &[1, 5]), set(&f, &[0, 7])];
        assert_eq!(k_fold_sumset(&parts).unwrap().to_vec(), vec![1, 5, 8, 12]);
        assert_eq!(k_fold_sumset(&parts[..1]).unwrap(), parts[0]);
        let zeros = vec![set(&f, &[0]); 3];
        assert_eq!(k_fold_sumset(&zeros).unwrap().to_vec(), vec![0]);
        assert!(k_fold_sumset(&[]).is_err());
    }

    #[test]
    fn difference_set_examples() {
        let f = field(7);
        let d = difference_set(&set(&f, &[0, 1])).unwrap();
        assert_eq!(d, FpSubset::cubes_with_zero(&f));
        assert_eq!(difference_set(&set(&f, &[4])).unwrap().to_vec(), vec![0]);
        assert_eq!(
            difference_set(&FpSubset::full(&f)).unwrap(),
            FpSubset::full(&f)
        );
        assert_eq!(difference_set(&FpSubset::empty(&f)), Err(Error::EmptySet));
    }

    #[test]
    fn representation_counts() {
        let f = field(13);
        let a = set(&f, &[1, 5]);
        let b = set(&f, &[0, 7]);
        assert_eq!(representation_count(&a, &b, 8).unwrap(), 1);
        assert_eq!(representation_count(&a, &b, 2).unwrap(), 0);
        let total: usize = (0..13)
            .map(|x| representation_count(&a, &b, x).unwrap())
            .sum();
        assert_eq!(total, 4);
    }
}
