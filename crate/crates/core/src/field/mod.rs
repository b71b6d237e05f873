//! Prime-field context: primality, least primitive root, discrete-log tables
//! and cubic-residue classification.

mod poly;
mod subset;

pub use poly::{FpPoly, SquarefreeInfo};
pub use subset::FpSubset;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeField::new`] unless overridden.
pub const DEFAULT_CAPACITY: u32 = 1 << 22;

/// Sentinel stored in the index table at 0.
pub const NO_INDEX: u32 = u32::MAX;

/// Coset of the cube subgroup an element falls in.
///
/// For `p ≡ 1 (mod 3)` a nonzero `x = g^k` has class `k mod 3`; for other
/// primes every nonzero element is a cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubeClass {
    Zero,
    Cube,
    NonCube1,
    NonCube2,
}

impl CubeClass {
    /// Exponent `k mod 3` of a nonzero element; `None` at zero.
    pub fn exponent(self) -> Option<u8> {
        match self {
            CubeClass::Zero => None,
            CubeClass::Cube => Some(0),
            CubeClass::NonCube1 => Some(1),
            CubeClass::NonCube2 => Some(2),
        }
    }

    fn from_exponent(e: u32) -> Self {
        match e % 3 {
            0 => CubeClass::Cube,
            1 => CubeClass::NonCube1,
            _ => CubeClass::NonCube2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldConfig {
    pub capacity: u32,
    /// Build the discrete-log tables. When off, classes come from
    /// `x^((p-1)/3)` and [`PrimeField::index`] returns `None`.
    pub index_tables: bool,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            capacity: DEFAULT_CAPACITY,
            index_tables: true,
        }
    }
}

/// Immutable arithmetic context for `F_p`.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u32,
    generator: u32,
    index_table: Option<Vec<u32>>,
    classes: Vec<CubeClass>,
    /// Least element of each coset `x·C_p`, indexed by class exponent.
    coset_min: [u32; 3],
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least primitive root modulo the prime `p`.
pub fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_config(p, FieldConfig::default())
    }

    pub fn with_config(p: u64, config: FieldConfig) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > config.capacity as u64 {
            return Err(Error::CapacityExceeded {
                p,
                capacity: config.capacity as u64,
            });
        }
        let generator = least_primitive_root(p);
        let n = p as usize;
        let nontrivial = p % 3 == 1;

        let mut classes = vec![CubeClass::Cube; n];
        classes[0] = CubeClass::Zero;
        let index_table = if config.index_tables {
            let mut index = vec![NO_INDEX; n];
            let mut x = 1u64;
            for k in 0..(p - 1) as u32 {
                index[x as usize] = k;
                if nontrivial {
                    classes[x as usize] = CubeClass::from_exponent(k);
                }
                x = x * generator % p;
            }
            Some(index)
        } else {
            if nontrivial {
                let e = (p - 1) / 3;
                let zeta = pow_mod(generator, e, p);
                let zeta2 = zeta * zeta % p;
                for x in 1..p {
                    let r = pow_mod(x, e, p);
                    classes[x as usize] = if r == 1 {
                        CubeClass::Cube
                    } else if r == zeta {
                        CubeClass::NonCube1
                    } else {
                        debug_assert_eq!(r, zeta2);
                        CubeClass::NonCube2
                    };
                }
            }
            None
        };

        let mut coset_min = [0u32; 3];
        if nontrivial {
            for e in 0..3u8 {
                coset_min[e as usize] = (1..p as u32)
                    .find(|&x| classes[x as usize].exponent() == Some(e))
                    .expect("each coset is nonempty");
            }
        } else {
            coset_min = [1, 1, 1];
        }

        Ok(PrimeField {
            p: p as u32,
            generator: generator as u32,
            index_table,
            classes,
            coset_min,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Whether the cubic character is nontrivial, i.e. `p ≡ 1 (mod 3)`.
    pub fn has_cubic_character(&self) -> bool {
        self.p % 3 == 1
    }

    pub fn require_cubic(&self) -> Result<()> {
        if self.has_cubic_character() {
            Ok(())
        } else {
            Err(Error::WrongResidueClass(self.p))
        }
    }

    /// Discrete logarithm base the generator; `None` at 0 or without tables.
    pub fn index(&self, x: u32) -> Option<u32> {
        let v = self.index_table.as_ref()?[x as usize];
        (v != NO_INDEX).then_some(v)
    }

    pub fn index_table(&self) -> Option<&[u32]> {
        self.index_table.as_deref()
    }

    #[inline]
    pub fn class(&self, x: u32) -> CubeClass {
        self.classes[x as usize]
    }

    pub fn classes(&self) -> &[CubeClass] {
        &self.classes
    }

    #[inline]
    pub fn is_cube(&self, x: u32) -> bool {
        self.classes[x as usize] == CubeClass::Cube
    }

    /// Least element of `x·C_p` for nonzero `x`.
    pub fn coset_min(&self, x: u32) -> u32 {
        match self.class(x).exponent() {
            Some(e) if self.has_cubic_character() => self.coset_min[e as usize],
            Some(_) => 1,
            None => 0,
        }
    }

    /// The nonzero cubes in increasing order.
    pub fn cube_elements(&self) -> Vec<u32> {
        (1..self.p).filter(|&x| self.is_cube(x)).collect()
    }

    pub fn cube_count(&self) -> usize {
        if self.has_cubic_character() {
            (self.p as usize - 1) / 3
        } else {
            self.p as usize - 1
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 {
            s - self.p as u64
        } else {
            s
        }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        pow_mod(a as u64, e, self.p as u64) as u32
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, self.p as u64 - 2))
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_cubes(p: u32) -> Vec<u32> {
        let mut v: Vec<u32> = (1..p).map(|x| x * x % p * x % p).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn cube_sets_of_small_primes() {
        assert_eq!(
            PrimeField::new(13).unwrap().cube_elements(),
            vec![1, 5, 8, 12]
        );
        assert_eq!(PrimeField::new(7).unwrap().cube_elements(), vec![1, 6]);
        assert_eq!(
            PrimeField::new(5).unwrap().cube_elements(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(PrimeField::new(2).unwrap().cube_elements(), vec![1]);
        assert_eq!(PrimeField::new(3).unwrap().cube_elements(), vec![1, 2]);
        for p in primes_in(2, 400) {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(f.cube_elements(), brute_cubes(p as u32), "p = {p}");
        }
    }

    #[test]
    fn rejects_composites_and_oversized() {
        assert_eq!(PrimeField::new(12).unwrap_err(), Error::NotPrime(12));
        assert_eq!(PrimeField::new(1).unwrap_err(), Error::NotPrime(1));
        let cfg = FieldConfig {
            capacity: 100,
            ..FieldConfig::default()
        };
        assert!(PrimeField::with_config(101, cfg).unwrap_err().is_capacity());
    }

    #[test]
    fn index_round_trip_exhaustive() {
        for p in primes_in(2, 1000) {
            let f = PrimeField::new(p).unwrap();
            for x in 1..p as u32 {
                let k = f.index(x).unwrap();
                assert_eq!(f.pow(f.generator(), k as u64), x);
            }
            assert_eq!(f.index(0), None);
        }
    }

    #[test]
    fn least_primitive_roots() {
        assert_eq!(least_primitive_root(7), 3);
        assert_eq!(least_primitive_root(13), 2);
        assert_eq!(least_primitive_root(31), 3);
        assert_eq!(least_primitive_root(41), 6);
    }

    #[test]
    fn classes_partition_units() {
        for p in primes_in(2, 10_000).into_iter().filter(|p| p % 3 == 1) {
            let f = PrimeField::new(p).unwrap();
            let mut counts = [0usize; 3];
            for x in 1..p as u32 {
                counts[f.class(x).exponent().unwrap() as usize] += 1;
            }
            let third = (p as usize - 1) / 3;
            assert_eq!(counts, [third; 3], "p = {p}");
        }
    }

    #[test]
    fn class_is_a_coset_homomorphism() {
        let f = PrimeField::new(61).unwrap();
        for x in 1..61 {
            for y in 1..61 {
                let ex = f.class(x).exponent().unwrap();
                let ey = f.class(y).exponent().unwrap();
                assert_eq!(f.class(f.mul(x, y)).exponent().unwrap(), (ex + ey) % 3);
            }
        }
    }

    #[test]
    fn streaming_classification_matches_tables() {
        let cfg = FieldConfig {
            index_tables: false,
            ..FieldConfig::default()
        };
        for p in [7u64, 13, 31, 97, 1009] {
            let a = PrimeField::new(p).unwrap();
            let b = PrimeField::with_config(p, cfg).unwrap();
            assert_eq!(a.classes(), b.classes());
            assert_eq!(b.index(3), None);
        }
    }

    #[test]
    fn coset_minima() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(f.coset_min(7), 4);
        assert_eq!(f.coset_min(12), 1);
        assert_eq!(f.coset_min(2), 2);
    }
}
