//! Distinct-root counts against brute force in F_p and F_{p²}.

use std::collections::BTreeSet;

use ffcube_core::FpPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u32; 6] = [5, 7, 11, 13, 29, 31];

/// `F_{p²} = F_p[i]/(i² - n)` with `n` a non-residue.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Fp2 {
    re: u64,
    im: u64,
}

struct Ext {
    p: u64,
    n: u64,
}

impl Ext {
    fn new(p: u64) -> Self {
        let squares: BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
        let n = (2..p).find(|x| !squares.contains(x)).unwrap();
        Ext { p, n }
    }

    fn mul(&self, a: Fp2, b: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 {
            re: (a.re * b.re + self.n * (a.im * b.im % p)) % p,
            im: (a.re * b.im + a.im * b.re) % p,
        }
    }

    fn eval(&self, coeffs: &[u32], x: Fp2) -> Fp2 {
        coeffs.iter().rev().fold(Fp2 { re: 0, im: 0 }, |acc, &c| {
            let m = self.mul(acc, x);
            Fp2 {
                re: (m.re + c as u64) % self.p,
                im: m.im,
            }
        })
    }

    fn roots(&self, coeffs: &[u32]) -> usize {
        (0..self.p)
            .flat_map(|re| (0..self.p).map(move |im| Fp2 { re, im }))
            .filter(|&x| self.eval(coeffs, x) == Fp2 { re: 0, im: 0 })
            .count()
    }
}

fn monic_quadratic(p: u32, rng: &mut ChaCha8Rng) -> FpPoly {
    FpPoly::new(p, [rng.random_range(0..p), rng.random_range(0..p), 1])
}

#[test]
fn roots_in_base_field_are_roots_of_the_squarefree_part() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in PRIMES {
        for _ in 0..200 {
            let deg = rng.random_range(1..=4);
            let mut c: Vec<u32> = (0..deg).map(|_| rng.random_range(0..p)).collect();
            c.push(rng.random_range(1..p));
            let f = FpPoly::new(p, c);
            let info = f.squarefree_decomposition().unwrap();
            let base_roots = (0..p).filter(|&x| f.eval(x) == 0).count();
            assert!(base_roots <= info.distinct_roots(), "p={p} f={f:?}");
            let sqfree = info
                .factors
                .iter()
                .fold(FpPoly::one(p), |acc, (g, _)| acc.mul(g));
            assert_eq!((0..p).filter(|&x| sqfree.eval(x) == 0).count(), base_roots);
        }
    }
}

#[test]
fn distinct_roots_match_brute_force_over_quadratic_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in PRIMES {
        let ext = Ext::new(p as u64);
        for _ in 0..60 {
            // products of linear and quadratic factors split in F_{p²}
            let mut f = FpPoly::one(p);
            while f.degree().unwrap_or(0) < 4 {
                let factor = if f.degree().unwrap_or(0) <= 2 && rng.random_bool(0.5) {
                    monic_quadratic(p, &mut rng)
                } else {
                    FpPoly::linear(p, rng.random_range(0..p))
                };
                f = f.mul(&factor);
                if rng.random_bool(0.3) {
                    break;
                }
            }
            let expected = ext.roots(f.coeffs());
            let got = f.squarefree_decomposition().unwrap().distinct_roots();
            assert_eq!(got, expected, "p={p} f={:?}", f.coeffs());
        }
    }
}

#[test]
fn perfect_powers() {
    for p in PRIMES {
        let l = FpPoly::linear(p, 2);
        assert!(l.pow(3).is_perfect_power(3).unwrap());
        assert!(!l.pow(2).is_perfect_power(3).unwrap());
        assert!(l
            .pow(2)
            .mul(&FpPoly::linear(p, 3).pow(4))
            .is_perfect_power(2)
            .unwrap());
    }
}
