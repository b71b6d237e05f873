use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact element `a + bω` of `Z[ω]`, with `ω = e^{2πi/3}` and `ω² = -1 - ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const OMEGA: Self = Self { a: 0, b: 1 };
    /// `ω² = -1 - ω`
    pub const OMEGA2: Self = Self { a: -1, b: -1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        Self { a, b: 0 }
    }

    /// `ω^e`
    pub fn omega_pow(e: u32) -> Self {
        match e % 3 {
            0 => Self::ONE,
            1 => Self::OMEGA,
            _ => Self::OMEGA2,
        }
    }

    /// Complex conjugate: `ω̄ = ω² = -1 - ω`, so `a + bω ↦ (a - b) - bω`.
    pub const fn conj(self) -> Self {
        Self {
            a: self.a - self.b,
            b: -self.b,
        }
    }

    /// `|z|² = a² - ab + b²`.
    pub const fn norm(self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    /// Twice the real part: `z + z̄ = 2a - b`.
    pub const fn trace(self) -> i64 {
        2 * self.a - self.b
    }

    pub const fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The value as a rational integer, if it is one.
    pub const fn as_int(self) -> Option<i64> {
        if self.b == 0 {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Self::ONE, |acc, _| acc * self)
    }

    /// Complex value, for display only.
    pub fn to_complex(self) -> (f64, f64) {
        let re = self.a as f64 - self.b as f64 / 2.0;
        let im = self.b as f64 * 3f64.sqrt() / 2.0;
        (re, im)
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        Self::from_int(a)
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω², with ω² = -1 - ω
    fn mul(self, o: Self) -> Self {
        let bd = self.b * o.b;
        Self::new(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)
    }
}

impl Mul<i64> for EisensteinInt {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k)
    }
}

impl AddAssign for EisensteinInt {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for EisensteinInt {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for EisensteinInt {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Sum for EisensteinInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a EisensteinInt> for EisensteinInt {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.copied().sum()
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "ω"),
            (0, -1) => write!(f, "-ω"),
            (0, b) => write!(f, "{b}ω"),
            (a, 1) => write!(f, "{a} + ω"),
            (a, -1) => write!(f, "{a} - ω"),
            (a, b) if b < 0 => write!(f, "{a} - {}ω", -b),
            (a, b) => write!(f, "{a} + {b}ω"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let w = EisensteinInt::OMEGA;
        assert_eq!(w * w, EisensteinInt::OMEGA2);
        assert_eq!(w * w * w, EisensteinInt::ONE);
        assert_eq!(EisensteinInt::ONE + w + w * w, EisensteinInt::ZERO);
        assert_eq!(w.conj(), w * w);
        assert_eq!(w.norm(), 1);
    }

    #[test]
    fn norm_matches_complex_modulus() {
        for a in -5..=5 {
            for b in -5..=5 {
                let z = EisensteinInt::new(a, b);
                let (re, im) = z.to_complex();
                assert!(((re * re + im * im) - z.norm() as f64).abs() < 1e-9);
                assert_eq!((z * z.conj()).as_int(), Some(z.norm()));
                assert_eq!(z.trace(), (z + z.conj()).as_int().unwrap());
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(EisensteinInt::new(-1, -3).to_string(), "-1 - 3ω");
        assert_eq!(EisensteinInt::new(2, 0).to_string(), "2");
    }
}
