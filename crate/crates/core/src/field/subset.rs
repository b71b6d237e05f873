use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::field::PrimeField;

/// A subset of `F_p` stored as a word-packed `p`-bit vector.
#[derive(Clone)]
pub struct FpSubset {
    field: Arc<PrimeField>,
    bits: Vec<u64>,
    card: usize,
}

fn words_for(p: u32) -> usize {
    (p as usize).div_ceil(64)
}

/// `dst |= src << s` over whole words.
fn or_shl(dst: &mut [u64], src: &[u64], s: usize) {
    let (w, b) = (s / 64, s % 64);
    for (i, d) in dst.iter_mut().enumerate().skip(w) {
        let j = i - w;
        let mut v = src[j] << b;
        if b > 0 && j > 0 {
            v |= src[j - 1] >> (64 - b);
        }
        *d |= v;
    }
}

/// `dst |= src >> s` over whole words.
fn or_shr(dst: &mut [u64], src: &[u64], s: usize) {
    let (w, b) = (s / 64, s % 64);
    for (i, d) in dst.iter_mut().enumerate() {
        let j = i + w;
        if j >= src.len() {
            break;
        }
        let mut v = src[j] >> b;
        if b > 0 && j + 1 < src.len() {
            v |= src[j + 1] << (64 - b);
        }
        *d |= v;
    }
}

impl FpSubset {
    fn from_bits(field: Arc<PrimeField>, mut bits: Vec<u64>) -> Self {
        let p = field.p() as usize;
        if !p.is_multiple_of(64) {
            if let Some(last) = bits.last_mut() {
                *last &= (1u64 << (p % 64)) - 1;
            }
        }
        let card = bits.iter().map(|w| w.count_ones() as usize).sum();
        FpSubset { field, bits, card }
    }

    pub fn empty(field: &Arc<PrimeField>) -> Self {
        Self::from_bits(field.clone(), vec![0; words_for(field.p())])
    }

    pub fn full(field: &Arc<PrimeField>) -> Self {
        Self::from_bits(field.clone(), vec![u64::MAX; words_for(field.p())])
    }

    /// Builds a set from elements, reducing each modulo `p`.
    pub fn from_elements<I: IntoIterator<Item = u32>>(field: &Arc<PrimeField>, elems: I) -> Self {
        let p = field.p();
        let mut bits = vec![0u64; words_for(p)];
        for x in elems {
            let x = (x % p) as usize;
            bits[x / 64] |= 1 << (x % 64);
        }
        Self::from_bits(field.clone(), bits)
    }

    pub fn singleton(field: &Arc<PrimeField>, x: u32) -> Self {
        Self::from_elements(field, [x])
    }

    pub fn from_predicate(field: &Arc<PrimeField>, pred: impl Fn(u32) -> bool) -> Self {
        Self::from_elements(field, (0..field.p()).filter(|&x| pred(x)))
    }

    /// `C_p`, the nonzero cubes.
    pub fn cubes(field: &Arc<PrimeField>) -> Self {
        Self::from_predicate(field, |x| field.is_cube(x))
    }

    /// `C_p ∪ {0}`.
    pub fn cubes_with_zero(field: &Arc<PrimeField>) -> Self {
        Self::from_predicate(field, |x| x == 0 || field.is_cube(x))
    }

    /// `D_p`, the nonzero non-cubes.
    pub fn noncubes(field: &Arc<PrimeField>) -> Self {
        Self::from_predicate(field, |x| x != 0 && !field.is_cube(x))
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn card(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x < self.p() && self.bits[x as usize / 64] >> (x % 64) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<u32> {
        self.iter().next()
    }

    /// `{x + t : x ∈ self}`, as a cyclic rotation of the bit vector.
    pub fn translate(&self, t: u32) -> Self {
        let p = self.p() as usize;
        let s = (t % self.p()) as usize;
        if s == 0 {
            return self.clone();
        }
        let mut out = vec![0u64; self.bits.len()];
        self.or_rotated_into(&mut out, s);
        debug_assert!(p > s);
        Self::from_bits(self.field.clone(), out)
    }

    /// `dst |= rotate(self, s)`; the caller masks the tail word.
    pub(crate) fn or_rotated_into(&self, dst: &mut [u64], s: usize) {
        let p = self.p() as usize;
        if s == 0 {
            for (d, w) in dst.iter_mut().zip(&self.bits) {
                *d |= w;
            }
            return;
        }
        or_shl(dst, &self.bits, s);
        or_shr(dst, &self.bits, p - s);
    }

    pub(crate) fn with_bits(field: &Arc<PrimeField>, bits: Vec<u64>) -> Self {
        Self::from_bits(field.clone(), bits)
    }

    pub fn dilate(&self, lambda: u32) -> Self {
        let f = &self.field;
        Self::from_elements(f, self.iter().map(|x| f.mul(x, lambda)))
    }

    pub fn negate(&self) -> Self {
        let f = &self.field;
        Self::from_elements(f, self.iter().map(|x| f.neg(x)))
    }

    /// `{λx + t : x ∈ self}`.
    pub fn affine(&self, lambda: u32, t: u32) -> Self {
        let f = &self.field;
        Self::from_elements(f, self.iter().map(|x| f.add(f.mul(x, lambda), t)))
    }

    pub fn union(&self, other: &Self) -> Self {
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        Self::from_bits(self.field.clone(), bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        Self::from_bits(self.field.clone(), bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn insert(&mut self, x: u32) {
        let x = x % self.p();
        let (w, b) = (x as usize / 64, x % 64);
        if self.bits[w] >> b & 1 == 0 {
            self.bits[w] |= 1 << b;
            self.card += 1;
        }
    }
}

impl PartialEq for FpSubset {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.bits == other.bits
    }
}

impl Eq for FpSubset {}

impl std::hash::Hash for FpSubset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.bits.hash(state);
    }
}

/// Lexicographic order on the sorted element lists.
impl Ord for FpSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for FpSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FpSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpSubset(p={}, {})", self.p(), self)
    }
}

impl fmt::Display for FpSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> Arc<PrimeField> {
        Arc::new(PrimeField::new(p).unwrap())
    }

    #[test]
    fn translation_wraps_across_word_boundaries() {
        for p in [7u64, 61, 67, 127, 131, 257] {
            let f = field(p);
            let a = FpSubset::from_elements(&f, [0, 1, 5, (p - 1) as u32, (p / 2) as u32]);
            for t in 0..p as u32 {
                let naive = FpSubset::from_elements(&f, a.iter().map(|x| f.add(x, t)));
                assert_eq!(a.translate(t), naive, "p={p} t={t}");
                assert_eq!(a.translate(t).card(), a.card());
            }
        }
    }

    #[test]
    fn card_tracks_popcount() {
        let f = field(13);
        let mut s = FpSubset::from_elements(&f, [1, 5, 5, 18]);
        assert_eq!(s.to_vec(), vec![1, 5]);
        assert_eq!(s.card(), 2);
        s.insert(5);
        s.insert(7);
        assert_eq!(s.card(), 3);
        assert_eq!(FpSubset::full(&f).card(), 13);
        assert_eq!(FpSubset::cubes(&f).to_vec(), vec![1, 5, 8, 12]);
        assert_eq!(FpSubset::noncubes(&f).card(), 8);
    }

    #[test]
    fn lexicographic_order() {
        let f = field(13);
        let a = FpSubset::from_elements(&f, [0, 4]);
        let b = FpSubset::from_elements(&f, [0, 7]);
        let c = FpSubset::from_elements(&f, [0, 4, 9]);
        assert!(a < b);
        assert!(a < c);
        assert!(c < b);
        assert_eq!(a.to_string(), "{0,4}");
    }
}
