use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, Comparison};
use crate::characters::{CharTable, EisensteinInt};
use crate::error::{Error, Result};
use crate::field::FpSubset;
use crate::par;
use crate::search::cap;
use crate::setfun::{difference_set, same_field, sumset, FpFunction};
use crate::verify::identities::{verify_shkredov_correlation, CORRELATION_COST_CAP};
use crate::verify::{Fact, IdentityReport};

fn require_pair(table: &CharTable, a: &FpSubset, b: &FpSubset) -> Result<()> {
    same_field(a.field(), b.field())?;
    same_field(table.field(), a.field())?;
    table.field().require_cubic()?;
    if sumset(a, b)? != FpSubset::cubes(a.field()) {
        return Err(Error::NotADecomposition);
    }
    Ok(())
}

/// For `A + B = C_p` with `B = {b_1..b_k}`, the weight
/// `3^k h(x) = Π_j (1 + ψ(x + b_j))`: nonnegative, equal to `3^k` on `A`, and
/// summing to `p + Σ_{|S|≥2} Σ_x Π_{j∈S} ψ(x + b_j)`. Also evaluates the
/// size bounds on `|A|` when `|A| ≥ k`.
pub fn verify_cover_weight(
    table: &CharTable,
    b: &FpSubset,
    a: &FpSubset,
) -> Result<IdentityReport> {
    require_pair(table, a, b)?;
    let k = b.card();
    cap("|B|", k as u64, 12)?;
    let field = table.field();
    let p = field.p();
    let bs = b.to_vec();
    let scale = 3i64.pow(k as u32);
    let weight: Vec<i64> = (0..p)
        .map(|x| {
            bs.iter()
                .map(|&bj| 1 + table.psi(field.add(x, bj)))
                .product()
        })
        .collect();
    let total: i64 = weight.iter().sum();
    let mut expansion = p as i64;
    for mask in 1u32..(1 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<u32> = (0..k)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| bs[j])
            .collect();
        expansion += (0..p)
            .map(|x| {
                chosen
                    .iter()
                    .map(|&bj| table.psi(field.add(x, bj)))
                    .product::<i64>()
            })
            .sum::<i64>();
    }

    let negative = weight.iter().position(|&w| w < 0);
    let off_a = a.iter().find(|&x| weight[x as usize] != scale);
    let binom_sum: i64 = (2..=k as u32)
        .map(|i| binomial(k as u32, i) * 2i64.pow(i) * (i as i64 - 1))
        .sum();
    let coef = 2 * k as i64 * 3i64.pow(k as u32 - 1) - scale + 1;
    let mut facts = vec![
        Fact::new(
            "nonnegative",
            negative.is_none(),
            negative.map_or("all x".into(), |x| format!("negative at x = {x}")),
        ),
        Fact::new(
            "full-on-A",
            off_a.is_none(),
            off_a.map_or(format!("3^k h = {scale} on A"), |x| {
                format!("3^k h({x}) = {}", weight[x as usize])
            }),
        ),
        Fact::cmp(
            "dominates-card",
            Comparison::le((scale * a.card() as i64) as i128, total as i128),
        ),
        Fact::eq("coefficient-count", binom_sum, coef),
        Fact::cmp(
            "weighted-sum-bound",
            bounds::le_surd(total as i128 - p as i128, coef as i128, p as i128),
        ),
    ];
    if a.card() >= k && k >= 2 {
        let (av, kk, pp) = (a.card() as u64, k as u64, p as u64);
        facts.push(Fact::cmp("size-lower", bounds::pair_size_lower(av, kk, pp)));
        facts.push(Fact::cmp(
            "size-middle",
            bounds::pair_size_middle(av, k as u32, pp),
        ));
        facts.push(Fact::cmp(
            "size-middle-stated",
            bounds::pair_size_middle_alt(av, k as u32, pp),
        ));
        facts.push(Fact::cmp(
            "size-upper",
            bounds::pair_size_upper(av, k as u32, pp),
        ));
    }
    Ok(IdentityReport::new(
        "cover-weight",
        p,
        EisensteinInt::from_int(total),
        EisensteinInt::from_int(expansion),
    )
    .with_k(k as i64)
    .with_facts(facts))
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Which tuples the four-point scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C4Scan {
    /// Every tuple in `F_p^3`.
    Exhaustive,
    /// `samples` random tuples off the degenerate set, plus every degenerate
    /// tuple.
    Sampled { samples: usize, seed: u64 },
}

impl C4Scan {
    /// Exhaustive for `p ≤ 31`, otherwise 1000 seeded samples.
    pub fn default_for(p: u32, seed: u64) -> Self {
        if p <= 31 {
            C4Scan::Exhaustive
        } else {
            C4Scan::Sampled {
                samples: 1000,
                seed,
            }
        }
    }
}

/// Largest `p` accepted by [`C4Scan::Exhaustive`].
pub const C4_EXHAUSTIVE_MAX_P: u32 = 61;

fn c4(psi: &[i64], p: usize, t: [usize; 3]) -> i64 {
    let at = |x: usize, s: usize| psi[if x + s >= p { x + s - p } else { x + s }];
    (0..p)
        .map(|x| psi[x] * at(x, t[0]) * at(x, t[1]) * at(x, t[2]))
        .sum()
}

fn degenerate_shift(t: [usize; 3]) -> Option<usize> {
    match t {
        [x, y, 0] | [x, 0, y] | [0, x, y] if x == y && x != 0 => Some(x),
        _ => None,
    }
}

/// Structure of `C_4(ψ)(x_1,x_2,x_3) = Σ_x ψ(x)ψ(x+x_1)ψ(x+x_2)ψ(x+x_3)`.
///
/// The main relation compares `C_4(ψ)(1,1,0)` with `4(p-2) + Σψ(x)ψ(x+1)`.
/// Facts cover that form and the form with the `-4ψ(t)` correction on all
/// degenerate tuples `(t,t,0), (t,0,t), (0,t,t)`, the ceiling `4p + 4√p`
/// there, `Σψ⁴ = 6(p-1) ≤ 6p` at the origin, and `|C_4(ψ)|² ≤ 48²p` on the
/// scanned tuples off the degenerate set.
pub fn verify_c4_psi_structure(table: &CharTable, scan: C4Scan) -> Result<IdentityReport> {
    table.field().require_cubic()?;
    let p = table.p() as usize;
    let psi: Vec<i64> = table.psi_values().iter().map(|&v| v as i64).collect();
    let corr: Vec<i64> = (0..p)
        .map(|t| (0..p).map(|x| psi[x] * psi[(x + t) % p]).sum())
        .collect();
    let stated = |t: usize| 4 * (p as i64 - 2) + corr[t];
    let corrected = |t: usize| stated(t) - 4 * psi[t];

    // Degenerate tuples, all of them.
    let mut stated_bad = Vec::new();
    let mut corrected_bad = Vec::new();
    let mut ceiling_bad = Vec::new();
    for t in 1..p {
        for tuple in [[t, t, 0], [t, 0, t], [0, t, t]] {
            let v = c4(&psi, p, tuple);
            if v != stated(t) {
                stated_bad.push((tuple, v, stated(t)));
            }
            if v != corrected(t) {
                corrected_bad.push((tuple, v));
            }
            if !bounds::le_surd(v as i128 - 4 * p as i128, 4, p as i128).holds {
                ceiling_bad.push((tuple, v));
            }
        }
    }
    let origin = c4(&psi, p, [0, 0, 0]);

    let off_tuples: Vec<[usize; 3]> = match scan {
        C4Scan::Exhaustive => {
            cap("p", p as u64, C4_EXHAUSTIVE_MAX_P as u64)?;
            vec![]
        }
        C4Scan::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(samples);
            while out.len() < samples {
                let t = [
                    rng.random_range(0..p),
                    rng.random_range(0..p),
                    rng.random_range(0..p),
                ];
                if t != [0, 0, 0] && degenerate_shift(t).is_none() {
                    out.push(t);
                }
            }
            out
        }
    };
    let off_ceiling = 48i128 * 48 * p as i128;
    let scan_off = |t: [usize; 3]| -> Option<(i128, [usize; 3])> {
        if t == [0, 0, 0] || degenerate_shift(t).is_some() {
            return None;
        }
        Some(((c4(&psi, p, t) as i128).pow(2), t))
    };
    let (count, worst) = match scan {
        C4Scan::Exhaustive => {
            let per_x1 = par::map_range(p as u64, |x1| {
                let mut n = 0usize;
                let mut worst: Option<(i128, [usize; 3])> = None;
                for x2 in 0..p {
                    for x3 in 0..p {
                        if let Some(v) = scan_off([x1 as usize, x2, x3]) {
                            n += 1;
                            if worst.is_none_or(|w| v.0 > w.0) {
                                worst = Some(v);
                            }
                        }
                    }
                }
                (n, worst)
            });
            let n = per_x1.iter().map(|(m, _)| m).sum();
            let worst = per_x1
                .into_iter()
                .filter_map(|(_, v)| v)
                .max_by_key(|v| v.0);
            (n, worst)
        }
        C4Scan::Sampled { .. } => {
            let vals = par::map(&off_tuples, |&t| scan_off(t));
            let n = vals.len();
            let worst = vals.into_iter().flatten().max_by_key(|v| v.0);
            (n, worst)
        }
    };
    let max_sq = worst.map_or(0, |w| w.0);

    let facts = vec![
        Fact::new(
            "stated-degenerate-formula",
            stated_bad.is_empty(),
            match stated_bad.first() {
                None => format!("all {} degenerate tuples", 3 * (p - 1)),
                Some((t, v, s)) => format!(
                    "{} of {} degenerate tuples differ; first {:?}: C4 = {v}, formula = {s}",
                    stated_bad.len(),
                    3 * (p - 1),
                    t
                ),
            },
        ),
        Fact::new(
            "corrected-degenerate-formula",
            corrected_bad.is_empty(),
            match corrected_bad.first() {
                None => format!(
                    "4(p-2) - 4psi(t) + sum psi psi_t on all {} tuples",
                    3 * (p - 1)
                ),
                Some((t, v)) => format!("{:?}: C4 = {v}", t),
            },
        ),
        Fact::new(
            "degenerate-ceiling",
            ceiling_bad.is_empty(),
            match ceiling_bad.first() {
                None => "C4 <= 4p + 4 sqrt p".to_string(),
                Some((t, v)) => format!("{:?}: C4 = {v}", t),
            },
        ),
        Fact::eq("origin-value", origin, 6 * (p as i64 - 1)),
        Fact::cmp(
            "origin-ceiling",
            Comparison::le(origin as i128, 6 * p as i128),
        ),
        Fact::new(
            "off-degenerate-bound",
            max_sq <= off_ceiling,
            format!(
                "{count} tuples scanned, max C4^2 = {max_sq}{} <= 48^2 p = {off_ceiling}",
                worst.map_or(String::new(), |w| format!(" at {:?}", w.1))
            ),
        ),
    ];
    Ok(IdentityReport::new(
        "psi-four-point",
        p as u32,
        EisensteinInt::from_int(c4(&psi, p, [1, 1, 0])),
        EisensteinInt::from_int(stated(1)),
    )
    .with_facts(facts))
}

/// Moment identities for `A + B = C_p` with `r = A∘ψ - 2a·1_B`:
/// `Σ_{x∈B} (A∘ψ)⁴ = 16a⁴b` (main relation), `r = 0` on `B`,
/// `Σ_{x∈B} |A∘ψ|² = 4a²b`, `⟨r⟩ = -2ab`, `Σ A∘ψ = 0`, the exact norm of
/// `A∘ψ`, and the resulting ceiling on `‖r‖²`.
pub fn verify_decomposition_moments(
    table: &CharTable,
    a: &FpSubset,
    b: &FpSubset,
) -> Result<IdentityReport> {
    require_pair(table, a, b)?;
    let field = table.field();
    let p = field.p() as i64;
    let (ac, bc) = (a.card() as i64, b.card() as i64);
    let psi = FpFunction::psi(table);
    let ind_a = FpFunction::indicator(a);
    let a_psi = ind_a.circ(&psi)?;
    let vals = a_psi.to_ints()?;
    let r: Vec<i64> = (0..field.p())
        .map(|x| vals[x as usize] - 2 * ac * b.contains(x) as i64)
        .collect();

    let fourth: i64 = b.iter().map(|x| vals[x as usize].pow(4)).sum();
    let second: i64 = b.iter().map(|x| vals[x as usize].pow(2)).sum();
    let stray = b.iter().find(|&x| r[x as usize] != 0);
    let r_norm: i64 = r.iter().map(|v| v * v).sum();
    let a_norm: i64 = vals.iter().map(|v| v * v).sum();
    let j11 = table.jacobi_sum(1, 1)?;
    let chi2 = FpFunction::chi(table, 2);
    let cross = j11 * chi2.inner_product(&ind_a.circ(&ind_a)?)?;

    let mut facts = vec![
        Fact::new(
            "r-vanishes-on-B",
            stray.is_none(),
            stray.map_or("r = 0 on B".into(), |x| {
                format!("r({x}) = {}", r[x as usize])
            }),
        ),
        Fact::eq("second-moment-on-B", second, 4 * ac * ac * bc),
        Fact::eq("r-total", r.iter().sum::<i64>(), -2 * ac * bc),
        Fact::eq("circ-total", vals.iter().sum::<i64>(), 0),
        Fact::eq(
            "circ-norm",
            a_norm,
            2 * p * ac - 2 * ac * ac + cross.trace(),
        ),
        Fact::cmp(
            "r-norm-ceiling",
            bounds::le_surd(
                (r_norm - 2 * ac * p + 2 * ac * ac + 4 * ac * ac * bc) as i128,
                2 * (ac * ac) as i128,
                p as i128,
            ),
        ),
    ];
    if (p as u64).pow(4) <= CORRELATION_COST_CAP {
        let via = verify_shkredov_correlation(&ind_a, &psi, 3, CORRELATION_COST_CAP)?;
        let full: i64 = vals.iter().map(|v| v.pow(4)).sum();
        facts.push(Fact::eq(
            "fourth-moment-via-correlations",
            via.rhs,
            EisensteinInt::from_int(full),
        ));
        facts.push(Fact::cmp(
            "fourth-moment-dominates",
            Comparison::le(fourth as i128, full as i128),
        ));
    }
    Ok(IdentityReport::new(
        "pair-moments",
        field.p(),
        EisensteinInt::from_int(fourth),
        EisensteinInt::from_int(16 * ac.pow(4) * bc),
    )
    .with_facts(facts))
}

/// Moment facts for `A - A = C_p ∪ {0}` with `0 ∈ A` and
/// `s = A∗ψ - 2(a-1)·1_A`: `⟨s⟩ = -2a(a-1)` (main relation), `s = 0` on
/// `A`, `s(x) = 3|C_p ∩ (x - A)| - a ≡ -a (mod 3)` off `A`,
/// `N_{-1} ≤ 2(p-1)/3`, `N_0 = a` when `3 ∤ a`, and the ceiling on `‖s‖²`.
pub fn verify_diff_cover_moments(table: &CharTable, a: &FpSubset) -> Result<IdentityReport> {
    same_field(table.field(), a.field())?;
    table.field().require_cubic()?;
    let field = table.field();
    if a.is_empty() || !a.contains(0) || difference_set(a)? != FpSubset::cubes_with_zero(field) {
        return Err(Error::NotADiffCover);
    }
    let p = field.p() as i64;
    let ac = a.card() as i64;
    let psi = FpFunction::psi(table);
    let conv = FpFunction::indicator(a).convolve(&psi)?.to_ints()?;
    let s: Vec<i64> = (0..field.p())
        .map(|x| conv[x as usize] - 2 * (ac - 1) * a.contains(x) as i64)
        .collect();
    let s_fn = FpFunction::from_ints(field, &s)?;
    let hist = s_fn.histogram()?;

    let on_a = a.iter().find(|&x| s[x as usize] != 0);
    let off_a: Vec<u32> = (0..field.p()).filter(|&x| !a.contains(x)).collect();
    let bad_mod = off_a
        .iter()
        .find(|&&x| (s[x as usize] + ac).rem_euclid(3) != 0);
    let bad_count = off_a.iter().find(|&&x| {
        let hits = a.iter().filter(|&y| field.is_cube(field.sub(x, y))).count() as i64;
        s[x as usize] != 3 * hits - ac
    });
    let s_norm = s_fn.norm2_sq();
    let n_minus = hist.count(-1) as i64;

    let mut facts = vec![
        Fact::new(
            "s-vanishes-on-A",
            on_a.is_none(),
            on_a.map_or("s = 0 on A".into(), |x| {
                format!("s({x}) = {}", s[x as usize])
            }),
        ),
        Fact::new(
            "s-congruence",
            bad_mod.is_none(),
            bad_mod.map_or(format!("s = -{ac} mod 3 off A"), |&x| {
                format!("s({x}) = {}", s[x as usize])
            }),
        ),
        Fact::new(
            "s-cube-count",
            bad_count.is_none(),
            bad_count.map_or("s = 3|C_p n (x - A)| - a off A".into(), |&x| {
                format!("mismatch at {x}")
            }),
        ),
        Fact::cmp(
            "minus-one-count",
            Comparison::le(3 * n_minus as i128, 2 * (p as i128 - 1)),
        ),
        Fact::cmp(
            "s-norm-ceiling",
            bounds::le_surd(
                (s_norm - 2 * ac * p + 2 * ac * ac + 4 * (ac - 1).pow(2) * ac) as i128,
                2 * (ac * ac) as i128,
                p as i128,
            ),
        ),
    ];
    if ac % 3 != 0 {
        facts.push(Fact::eq("zero-count", hist.count(0) as i64, ac));
    }
    Ok(IdentityReport::new(
        "diff-cover-moments",
        field.p(),
        EisensteinInt::from_int(s.iter().sum()),
        EisensteinInt::from_int(-2 * ac * (ac - 1)),
    )
    .with_facts(facts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use std::sync::Arc;

    fn setup(p: u64) -> (Arc<PrimeField>, CharTable) {
        let f = Arc::new(PrimeField::new(p).unwrap());
        (f.clone(), CharTable::new(f))
    }

    fn set(f: &Arc<PrimeField>, e: &[u32]) -> FpSubset {
        FpSubset::from_elements(f, e.iter().copied())
    }

    #[test]
    fn cover_weight_p13() {
        let (f, t) = setup(13);
        let r = verify_cover_weight(&t, &set(&f, &[0, 7]), &set(&f, &[1, 5])).unwrap();
        assert!(r.passed(), "{r}");
        let lower = r.facts.iter().find(|x| x.name == "size-lower").unwrap();
        assert_eq!(lower.detail, "12 <= 12");
        assert_eq!(
            verify_cover_weight(&t, &set(&f, &[0]), &set(&f, &[1, 5])).unwrap_err(),
            Error::NotADecomposition
        );
    }

    #[test]
    fn pair_moments_p13() {
        let (f, t) = setup(13);
        let r = verify_decomposition_moments(&t, &set(&f, &[1, 5]), &set(&f, &[0, 7])).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.lhs, EisensteinInt::from_int(512));
    }

    #[test]
    fn diff_cover_moments_p7() {
        let (f, t) = setup(7);
        let r = verify_diff_cover_moments(&t, &set(&f, &[0, 1])).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.lhs, EisensteinInt::from_int(-4));
        assert_eq!(
            verify_diff_cover_moments(&t, &set(&f, &[0, 2])).unwrap_err(),
            Error::NotADiffCover
        );
    }

    #[test]
    fn four_point_bounds_hold_with_correction() {
        let (_, t) = setup(13);
        let r = verify_c4_psi_structure(&t, C4Scan::Exhaustive).unwrap();
        let holds = |n: &str| r.facts.iter().find(|x| x.name == n).unwrap().holds;
        assert!(holds("corrected-degenerate-formula"));
        assert!(holds("degenerate-ceiling"));
        assert!(holds("origin-ceiling"));
        assert!(holds("off-degenerate-bound"));
        assert_eq!(
            r.facts
                .iter()
                .find(|x| x.name == "origin-value")
                .unwrap()
                .detail,
            "72 = 72"
        );
        // The uncorrected form differs by 4ψ(t), and ψ(1) = 2.
        assert_eq!(r.lhs.a + 8, r.rhs.a);
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(degenerate_shift([3, 3, 0]), Some(3));
        assert_eq!(degenerate_shift([0, 2, 2]), Some(2));
        assert_eq!(degenerate_shift([0, 0, 0]), None);
        assert_eq!(degenerate_shift([1, 2, 0]), None);
    }
}
