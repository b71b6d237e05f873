use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::characters::{CharTable, EisensteinInt};
use crate::error::{Error, Result};
use crate::field::{FpSubset, PrimeField};
use crate::setfun::same_field;

/// An exact function `F_p → Z[ω]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpFunction {
    field: Arc<PrimeField>,
    values: Vec<EisensteinInt>,
}

/// Value counts `N_k = |{x : f(x) = k}|` of an integer-valued function.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValueHistogram {
    pub counts: BTreeMap<i64, usize>,
}

impl ValueHistogram {
    pub fn count(&self, k: i64) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

impl FpFunction {
    pub fn from_values(field: &Arc<PrimeField>, values: Vec<EisensteinInt>) -> Result<Self> {
        if values.len() != field.p() as usize {
            return Err(Error::InvalidArgument(format!(
                "function needs {} values, got {}",
                field.p(),
                values.len()
            )));
        }
        Ok(FpFunction {
            field: field.clone(),
            values,
        })
    }

    pub fn from_fn(field: &Arc<PrimeField>, f: impl FnMut(u32) -> EisensteinInt) -> Self {
        FpFunction {
            field: field.clone(),
            values: (0..field.p()).map(f).collect(),
        }
    }

    pub fn from_ints(field: &Arc<PrimeField>, ints: &[i64]) -> Result<Self> {
        Self::from_values(
            field,
            ints.iter().map(|&v| EisensteinInt::from_int(v)).collect(),
        )
    }

    pub fn zero(field: &Arc<PrimeField>) -> Self {
        Self::constant(field, 0)
    }

    pub fn constant(field: &Arc<PrimeField>, c: i64) -> Self {
        Self::from_fn(field, |_| EisensteinInt::from_int(c))
    }

    /// `δ_{x0}`.
    pub fn delta(field: &Arc<PrimeField>, x0: u32) -> Self {
        Self::from_fn(field, |x| EisensteinInt::from_int((x == x0) as i64))
    }

    /// The characteristic function `A(x)`.
    pub fn indicator(set: &FpSubset) -> Self {
        Self::from_fn(set.field(), |x| {
            EisensteinInt::from_int(set.contains(x) as i64)
        })
    }

    pub fn psi(table: &CharTable) -> Self {
        Self::from_fn(table.field(), |x| EisensteinInt::from_int(table.psi(x)))
    }

    /// `χ^power` as a function.
    pub fn chi(table: &CharTable, power: u32) -> Self {
        Self::from_fn(table.field(), |x| table.chi(x, power))
    }

    /// Integer values drawn uniformly from `lo..=hi`.
    pub fn random_int<R: Rng>(field: &Arc<PrimeField>, rng: &mut R, lo: i64, hi: i64) -> Self {
        Self::from_fn(field, |_| {
            EisensteinInt::from_int(rng.random_range(lo..=hi))
        })
    }

    /// Both Eisenstein coordinates drawn uniformly from `lo..=hi`.
    pub fn random_eisenstein<R: Rng>(
        field: &Arc<PrimeField>,
        rng: &mut R,
        lo: i64,
        hi: i64,
    ) -> Self {
        let values = (0..field.p())
            .map(|_| EisensteinInt::new(rng.random_range(lo..=hi), rng.random_range(lo..=hi)))
            .collect();
        FpFunction {
            field: field.clone(),
            values,
        }
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn value(&self, x: u32) -> EisensteinInt {
        self.values[x as usize]
    }

    pub fn values(&self) -> &[EisensteinInt] {
        &self.values
    }

    pub fn map(&self, op: impl Fn(EisensteinInt) -> EisensteinInt) -> Self {
        FpFunction {
            field: self.field.clone(),
            values: self.values.iter().map(|&v| op(v)).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(EisensteinInt, EisensteinInt) -> EisensteinInt,
    ) -> Result<Self> {
        same_field(&self.field, &other.field)?;
        Ok(FpFunction {
            field: self.field.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: EisensteinInt) -> Self {
        self.map(|v| v * c)
    }

    pub fn conj(&self) -> Self {
        self.map(EisensteinInt::conj)
    }

    /// `f^c(x) = f(-x)`.
    pub fn reflect(&self) -> Self {
        let f = &self.field;
        Self::from_fn(f, |x| self.value(f.neg(x)))
    }

    /// `x ↦ f(x + t)`.
    pub fn shift(&self, t: u32) -> Self {
        let f = &self.field;
        Self::from_fn(f, |x| self.value(f.add(x, t)))
    }

    /// `⟨f⟩ = Σ_x f(x)`.
    pub fn sum(&self) -> EisensteinInt {
        self.values.iter().sum()
    }

    /// `(f ∘ g)(x) = Σ_y f(y) g(x + y)`.
    pub fn circ(&self, g: &Self) -> Result<Self> {
        same_field(&self.field, &g.field)?;
        let p = self.p() as usize;
        let support: Vec<(usize, EisensteinInt)> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(y, &v)| (y, v))
            .collect();
        let values = (0..p)
            .map(|x| {
                support
                    .iter()
                    .map(|&(y, fy)| {
                        let s = x + y;
                        fy * g.values[if s >= p { s - p } else { s }]
                    })
                    .sum()
            })
            .collect();
        Ok(FpFunction {
            field: self.field.clone(),
            values,
        })
    }

    /// `(f ∗ g)(x) = Σ_y f(y) g(x - y)`.
    pub fn convolve(&self, g: &Self) -> Result<Self> {
        same_field(&self.field, &g.field)?;
        let p = self.p() as usize;
        let values = (0..p)
            .map(|x| {
                (0..p)
                    .filter(|&y| !self.values[y].is_zero())
                    .map(|y| self.values[y] * g.values[(x + p - y) % p])
                    .sum()
            })
            .collect();
        Ok(FpFunction {
            field: self.field.clone(),
            values,
        })
    }

    /// `⟨f, g⟩ = Σ_x f(x) conj(g(x))`.
    pub fn inner_product(&self, g: &Self) -> Result<EisensteinInt> {
        same_field(&self.field, &g.field)?;
        Ok(self
            .values
            .iter()
            .zip(&g.values)
            .map(|(&a, &b)| a * b.conj())
            .sum())
    }

    /// `‖f‖₂² = Σ_x |f(x)|²`.
    pub fn norm2_sq(&self) -> i64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    pub fn is_integer_valued(&self) -> bool {
        self.values.iter().all(|v| v.b == 0)
    }

    pub fn to_ints(&self) -> Result<Vec<i64>> {
        self.values
            .iter()
            .map(|v| v.as_int().ok_or(Error::NonIntegerValues))
            .collect()
    }

    pub fn histogram(&self) -> Result<ValueHistogram> {
        let mut counts = BTreeMap::new();
        for v in self.to_ints()? {
            *counts.entry(v).or_insert(0) += 1;
        }
        Ok(ValueHistogram { counts })
    }

    /// `C_{k+1}(f)` at the given shift tuple.
    pub fn correlation(&self, shifts: &[u32]) -> Result<EisensteinInt> {
        correlation(self, shifts)
    }
}

/// `C_{k+1}(f)(x_1, …, x_k) = Σ_x f(x) f(x + x_1) ⋯ f(x + x_k)`.
pub fn correlation(f: &FpFunction, shifts: &[u32]) -> Result<EisensteinInt> {
    if shifts.is_empty() {
        return Err(Error::InvalidArgument(
            "correlation needs k >= 1 shifts".into(),
        ));
    }
    let field = f.field();
    let p = field.p();
    let shifts: Vec<u32> = shifts.iter().map(|&s| s % p).collect();
    Ok((0..p)
        .map(|x| {
            shifts
                .iter()
                .fold(f.value(x), |acc, &s| acc * f.value(field.add(x, s)))
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table(p: u64) -> CharTable {
        CharTable::for_prime(p).unwrap()
    }

    fn int(v: i64) -> EisensteinInt {
        EisensteinInt::from_int(v)
    }

    #[test]
    fn circ_examples() {
        let t = table(13);
        let f = t.field();
        let d = FpFunction::delta(f, 0);
        assert_eq!(d.circ(&d).unwrap(), d);
        let a = FpFunction::indicator(&FpSubset::from_elements(f, [1, 5]));
        let psi = FpFunction::psi(&t);
        assert_eq!(a.circ(&psi).unwrap().value(0), int(4));
        let one = FpFunction::constant(f, 1);
        assert_eq!(one.circ(&one).unwrap(), FpFunction::constant(f, 13));
    }

    #[test]
    fn convolve_examples() {
        let f7 = Arc::new(PrimeField::new(7).unwrap());
        let s = FpFunction::indicator(&FpSubset::from_elements(&f7, [0, 1]));
        assert_eq!(s.convolve(&s).unwrap().value(1), int(2));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = FpFunction::random_eisenstein(&f7, &mut rng, -3, 3);
        assert_eq!(g.convolve(&FpFunction::delta(&f7, 0)).unwrap(), g);
    }

    #[test]
    fn convolution_is_reflected_correlation() {
        for p in [7u64, 13, 31] {
            let f = Arc::new(PrimeField::new(p).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..100 {
                let a = FpFunction::random_eisenstein(&f, &mut rng, -3, 3);
                let b = FpFunction::random_eisenstein(&f, &mut rng, -3, 3);
                assert_eq!(a.convolve(&b).unwrap(), a.reflect().circ(&b).unwrap());
            }
        }
    }

    #[test]
    fn inner_products() {
        let t = table(13);
        let f = t.field();
        let psi = FpFunction::psi(&t);
        assert_eq!(psi.inner_product(&psi).unwrap(), int(24));
        assert_eq!(psi.norm2_sq(), 24);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = FpFunction::random_eisenstein(f, &mut rng, -3, 3);
        assert_eq!(
            g.inner_product(&FpFunction::constant(f, 1)).unwrap(),
            g.sum()
        );
        assert_eq!(g.inner_product(&g).unwrap(), int(g.norm2_sq()));
        let d = FpFunction::delta(f, 0);
        assert_eq!(d.inner_product(&d).unwrap(), int(1));
    }

    #[test]
    fn correlation_examples() {
        let t = table(13);
        let f = t.field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = FpFunction::random_int(f, &mut rng, -3, 3);
        let gg = g.circ(&g).unwrap();
        for s in 0..13 {
            assert_eq!(correlation(&g, &[s]).unwrap(), gg.value(s));
        }
        let cubes: EisensteinInt = g.values().iter().map(|v| *v * *v * *v).sum();
        assert_eq!(correlation(&g, &[0, 0]).unwrap(), cubes);
        let psi = FpFunction::psi(&t);
        for s in 1..13 {
            // ψ² = 2·[x≠0] + ψ, and Σ_x [x≠0]·ψ(x+s) = -ψ(s)
            let c4 = correlation(&psi, &[s, s, 0]).unwrap();
            assert_eq!(c4, int(4 * 11 - 4 * t.psi(s) + t.psi_autocorrelation(s)));
        }
        assert!(correlation(&psi, &[]).is_err());
    }

    #[test]
    fn histograms() {
        let t = table(13);
        let f = t.field();
        let h = FpFunction::psi(&t).histogram().unwrap();
        assert_eq!((h.count(2), h.count(0), h.count(-1)), (4, 1, 8));
        assert_eq!(FpFunction::zero(f).histogram().unwrap().count(0), 13);
        let d = FpFunction::delta(f, 3).histogram().unwrap();
        assert_eq!((d.count(1), d.count(0), d.total()), (1, 12, 13));
        assert_eq!(
            FpFunction::chi(&t, 1).histogram(),
            Err(Error::NonIntegerValues)
        );
    }
}
