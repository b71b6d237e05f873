//! Exact comparators for inequalities with square roots and irrational
//! constants. Each inequality is cleared of denominators and, where a `√p`
//! remains, decided by comparing integer squares with explicit sign cases.

/// An inequality `lhs ≤ rhs` after rationalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
    /// Equality holds in the original (unsquared) inequality.
    pub tight: bool,
}

impl Comparison {
    pub fn le(lhs: i128, rhs: i128) -> Self {
        Comparison {
            lhs,
            rhs,
            holds: lhs <= rhs,
            tight: lhs == rhs,
        }
    }
}

/// Decides `x ≤ c·√n` for `c, n ≥ 0`.
pub fn le_surd(x: i128, c: i128, n: i128) -> Comparison {
    debug_assert!(c >= 0 && n >= 0);
    if x <= 0 {
        return Comparison {
            lhs: x,
            rhs: 0,
            holds: true,
            tight: x == 0 && (c == 0 || n == 0),
        };
    }
    let (lhs, rhs) = (x * x, c * c * n);
    Comparison {
        lhs,
        rhs,
        holds: lhs <= rhs,
        tight: lhs == rhs,
    }
}

/// Decides `x < c·√n` strictly, for `c, n ≥ 0`.
pub fn lt_surd(x: i128, c: i128, n: i128) -> bool {
    let cmp = le_surd(x, c, n);
    cmp.holds && !cmp.tight
}

/// `√p / 18 ≤ a`.
pub fn sqrt_p_over_18_le(a: u64, p: u64) -> Comparison {
    Comparison::le(p as i128, 324 * (a as i128).pow(2))
}

/// `a ≤ 3√p + 269`.
pub fn le_three_sqrt_p_plus_269(a: u64, p: u64) -> Comparison {
    le_surd(a as i128 - 269, 3, p as i128)
}

/// `√((p - 1)/3) ≤ a`.
pub fn sqrt_cube_density_le(a: u64, p: u64) -> Comparison {
    Comparison::le(p as i128 - 1, 3 * (a as i128).pow(2))
}

/// `a ≤ √p`.
pub fn le_sqrt_p(a: u64, p: u64) -> Comparison {
    Comparison::le((a as i128).pow(2), p as i128)
}

/// `-1/2 + (√3/6)·√(8p - 5) ≤ a`, equivalently `24p - 15 ≤ 9(2a + 1)²`.
pub fn self_sum_lower(a: u64, p: u64) -> Comparison {
    Comparison::le(24 * p as i128 - 15, 9 * (2 * a as i128 + 1).pow(2))
}

/// `√((p + 2)/3) ≤ a`.
pub fn diff_cover_lower(a: u64, p: u64) -> Comparison {
    Comparison::le(p as i128 + 2, 3 * (a as i128).pow(2))
}

/// The size ceiling for difference covers: `a ≤ √p` when `3 | a`, and
/// `a ≤ (1 + √17)/4 · (√p + 1)` otherwise.
pub fn diff_cover_upper(a: u64, p: u64) -> Comparison {
    if a.is_multiple_of(3) {
        return le_sqrt_p(a, p);
    }
    // 4a ≤ (1 + √17)(1 + √p)  ⟺  √17·u ≤ 16 + u + 16√p  with u = 4a
    // ⟺  17u² - w² - 256p ≤ 32w√p  with w = 16 + u.
    let u = 4 * a as i128;
    let w = 16 + u;
    let p = p as i128;
    let mut c = le_surd(17 * u * u - w * w - 256 * p, 32 * w, p);
    c.tight = false;
    c
}

/// `p + a√p ≥ 2a² - 3a + 2`, the counting bound for a difference cover
/// containing 0.
pub fn diff_cover_counting(a: u64, p: u64) -> Comparison {
    let a = a as i128;
    le_surd(2 * a * a - 3 * a + 2 - p as i128, a, p as i128)
}

/// `√p ≥ (√5 - 1)/2 · a`, equivalently `a² - p ≤ a√p`.
pub fn golden_ratio_bound(a: u64, p: u64) -> Comparison {
    let a = a as i128;
    let mut c = le_surd(a * a - p as i128, a, p as i128);
    c.tight = false;
    c
}

/// `a + b + 2ab ≤ p + a√p`.
pub fn pair_moment_bound(a: u64, b: u64, p: u64) -> Comparison {
    let (a, b) = (a as i128, b as i128);
    le_surd(a + b + 2 * a * b - p as i128, a, p as i128)
}

/// `(p - 1)/(3k) ≤ a`.
pub fn pair_size_lower(a: u64, k: u64, p: u64) -> Comparison {
    Comparison::le(p as i128 - 1, 3 * k as i128 * a as i128)
}

/// `a ≤ p/3^k + (2k/3)·√p`.
pub fn pair_size_upper(a: u64, k: u32, p: u64) -> Comparison {
    let t = 3i128.pow(k);
    le_surd(
        3 * t * a as i128 - 3 * p as i128,
        2 * k as i128 * t,
        p as i128,
    )
}

/// `3^k·a ≤ p + coef·√p` with `coef = 2k·3^(k-1) - 3^k + 1`, the middle
/// step of the pair size chain.
pub fn pair_size_middle(a: u64, k: u32, p: u64) -> Comparison {
    let t = 3i128.pow(k);
    let coef = 2 * k as i128 * 3i128.pow(k - 1) - t + 1;
    le_surd(t * a as i128 - p as i128, coef, p as i128)
}

/// The same middle step with coefficient `2k·3^(k-1) - 2^k + 1`.
pub fn pair_size_middle_alt(a: u64, k: u32, p: u64) -> Comparison {
    let t = 3i128.pow(k);
    let coef = 2 * k as i128 * 3i128.pow(k - 1) - 2i128.pow(k) + 1;
    le_surd(t * a as i128 - p as i128, coef, p as i128)
}

/// `((p - 1)/3)² > (3√p + c)³`, the size contradiction for three-part
/// decompositions given part sizes at most `3√p + c`.
pub fn triple_gap(p: u64, c: u64) -> bool {
    // (3s + c)³ = 27p·s + 27c·p + 9c²·s + c³ with s = √p.
    let (p, c) = (p as i128, c as i128);
    let lhs = (p - 1) * (p - 1) - 9 * (27 * c * p + c * c * c);
    lhs > 0 && lhs * lhs > (9 * (27 * p + 9 * c * c)).pow(2) * p
}

/// `4p - 36√p > 9`.
pub fn pair_two_gap(p: u64) -> bool {
    let p = p as i128;
    4 * p - 9 > 0 && (4 * p - 9).pow(2) > 1296 * p
}
