use std::fmt;

use crate::error::{Error, Result};
use crate::field::pow_mod;

/// Dense polynomial over `F_p`, coefficients stored low degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial is
/// the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

/// Result of a squarefree decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeInfo {
    /// `(factor, multiplicity)`; factors are monic, squarefree and pairwise coprime.
    pub factors: Vec<(FpPoly, u64)>,
}

impl SquarefreeInfo {
    /// Number of distinct roots in the algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, _)| f.degree().unwrap_or(0))
            .sum()
    }

    /// Whether every root multiplicity is divisible by `m`, i.e. `f = c·g^m`.
    pub fn is_perfect_power(&self, m: u64) -> bool {
        self.factors.iter().all(|(_, e)| e % m == 0)
    }
}

impl FpPoly {
    pub fn new(p: u32, coeffs: impl IntoIterator<Item = u32>) -> Self {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    pub fn from_signed(p: u32, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u32))
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::new(p, [c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(p: u32, root: u32) -> Self {
        Self::new(p, [(p - root % p) % p, 1])
    }

    /// `∏ (x - r)` over the given roots, with repetition.
    pub fn from_roots(p: u32, roots: &[u32]) -> Self {
        roots
            .iter()
            .fold(Self::one(p), |acc, &r| acc.mul(&Self::linear(p, r)))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn mulmod(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    fn inv(&self, a: u32) -> u32 {
        pow_mod(a as u64, self.p as u64 - 2, self.p as u64) as u32
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % self.p as u64) as u32
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0) as u64;
        Self::new(
            self.p,
            (0..n).map(|i| ((get(&self.coeffs, i) + get(&other.coeffs, i)) % self.p as u64) as u32),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| self.mulmod(a, c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % self.p as u64;
            }
        }
        Self::new(self.p, out.into_iter().map(|c| c as u32))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulmod(c, (i as u64 % self.p as u64) as u32)),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.leading()))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        if rem.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let lead_inv = self.inv(divisor.leading());
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = self.mulmod(rem[i + dd], lead_inv);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let t = self.mulmod(c, d);
                rem[i + j] = (rem[i + j] + self.p - t) % self.p;
            }
        }
        (Self::new(self.p, quot), Self::new(self.p, rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient by a divisor known to divide `self`.
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Inverse Frobenius for a polynomial with zero derivative:
    /// `f(x) = g(x^p) = g(x)^p`, returns `g`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied())
    }

    /// Squarefree decomposition, valid in characteristic `p`.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeInfo> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut factors = Vec::new();
        self.monic().sqf_into(1, &mut factors);
        factors.sort_by(|a: &(FpPoly, u64), b| (a.1, &a.0.coeffs).cmp(&(b.1, &b.0.coeffs)));
        Ok(SquarefreeInfo { factors })
    }

    fn sqf_into(&self, scale: u64, out: &mut Vec<(FpPoly, u64)>) {
        if self.degree() == Some(0) {
            return;
        }
        let d = self.derivative();
        if d.is_zero() {
            self.pth_root().sqf_into(scale * self.p as u64, out);
            return;
        }
        let mut c = self.gcd(&d);
        let mut w = self.exact_div(&c);
        let mut i = 1u64;
        while w.degree() != Some(0) {
            let y = w.gcd(&c);
            let z = w.exact_div(&y);
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i * scale));
            }
            i += 1;
            c = c.exact_div(&y);
            w = y;
        }
        if c.degree().unwrap_or(0) > 0 {
            c.pth_root().sqf_into(scale * self.p as u64, out);
        }
    }

    /// Number of distinct roots in the algebraic closure of `F_p`.
    pub fn squarefree_part_degree(&self) -> Result<usize> {
        Ok(self.squarefree_decomposition()?.distinct_roots())
    }

    /// Whether `self = c·g^m` for some polynomial `g` and constant `c`.
    pub fn is_perfect_power(&self, m: u64) -> Result<bool> {
        Ok(self.squarefree_decomposition()?.is_perfect_power(m))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}
