//! The cubic character χ, the indicator-like function ψ = χ + χ², Jacobi sums
//! and complete character sums of polynomials with a Weil-bound check.
//!
//! χ is fixed by `χ(g^k) = ω^(k mod 3)` for the least primitive root `g`.
//! The other cubic character is its conjugate; every identity checked in this
//! crate is invariant under swapping the two.

mod eisenstein;

use std::sync::Arc;

pub use eisenstein::EisensteinInt;

use crate::error::Result;
use crate::field::{FpPoly, PrimeField};

/// Human-readable statement of the character convention, carried in reports.
pub const CHI_CONVENTION: &str =
    "chi(g^k) = omega^(k mod 3), g = least primitive root, omega = exp(2*pi*i/3)";

/// Marker in [`CharTable::chi_exponents`] for `χ(0) = 0`.
pub const CHI_ZERO: u8 = 3;

/// Precomputed χ and ψ over the whole field.
#[derive(Debug, Clone)]
pub struct CharTable {
    field: Arc<PrimeField>,
    chi_exp: Vec<u8>,
    psi_val: Vec<i8>,
}

/// Outcome of [`CharTable::char_sum`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSum {
    pub value: EisensteinInt,
    /// Distinct roots of `f` in the algebraic closure.
    pub distinct_roots: usize,
    /// False when the Weil hypothesis fails: trivial character power or `f`
    /// a constant multiple of a perfect cube.
    pub hypothesis_ok: bool,
    /// `|value|² ≤ (r-1)²·p`; `None` when the hypothesis fails.
    pub weil_ok: Option<bool>,
}

impl CharTable {
    pub fn new(field: Arc<PrimeField>) -> Self {
        let n = field.p() as usize;
        let mut chi_exp = vec![CHI_ZERO; n];
        let mut psi_val = vec![0i8; n];
        for x in 1..field.p() {
            let e = if field.has_cubic_character() {
                field.class(x).exponent().expect("nonzero")
            } else {
                0
            };
            chi_exp[x as usize] = e;
            psi_val[x as usize] = if e == 0 { 2 } else { -1 };
        }
        CharTable {
            field,
            chi_exp,
            psi_val,
        }
    }

    pub fn for_prime(p: u64) -> Result<Self> {
        Ok(Self::new(Arc::new(PrimeField::new(p)?)))
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn chi_exponents(&self) -> &[u8] {
        &self.chi_exp
    }

    pub fn psi_values(&self) -> &[i8] {
        &self.psi_val
    }

    /// `χ(x)^power`, with `χ(0) = 0` for every power.
    #[inline]
    pub fn chi(&self, x: u32, power: u32) -> EisensteinInt {
        match self.chi_exp[x as usize] {
            CHI_ZERO => EisensteinInt::ZERO,
            e => EisensteinInt::omega_pow(e as u32 * (power % 3)),
        }
    }

    /// `ψ(x) = χ(x) + χ(x²)`: 2 on cubes, 0 at 0, -1 elsewhere.
    #[inline]
    pub fn psi(&self, x: u32) -> i64 {
        self.psi_val[x as usize] as i64
    }

    /// `J(χ^r, χ^s) = Σ_x χ^r(x) χ^s(1 - x)` by direct summation.
    pub fn jacobi_sum(&self, r: u32, s: u32) -> Result<EisensteinInt> {
        self.field.require_cubic()?;
        let f = &self.field;
        Ok((0..f.p())
            .map(|x| self.chi(x, r) * self.chi(f.sub(1, x), s))
            .sum())
    }

    /// `Σ_x ψ(x) ψ(x + b)`.
    pub fn psi_autocorrelation(&self, b: u32) -> i64 {
        let f = &self.field;
        (0..f.p())
            .map(|x| self.psi(x) * self.psi(f.add(x, b)))
            .sum()
    }

    /// `Σ_x χ^power(a·f(x))`, with the Weil-bound check.
    pub fn char_sum(&self, f: &FpPoly, power: u32, a: u32) -> Result<CharSum> {
        let info = f.squarefree_decomposition()?;
        let field = &self.field;
        let value: EisensteinInt = (0..field.p())
            .map(|x| self.chi(field.mul(a % field.p(), f.eval(x)), power))
            .sum();
        let r = info.distinct_roots();
        let hypothesis_ok =
            field.has_cubic_character() && !power.is_multiple_of(3) && !info.is_perfect_power(3);
        let weil_ok = hypothesis_ok.then(|| {
            let bound = (r as i128 - 1).pow(2) * field.p() as i128;
            (value.norm() as i128) <= bound
        });
        Ok(CharSum {
            value,
            distinct_roots: r,
            hypothesis_ok,
            weil_ok,
        })
    }
}
