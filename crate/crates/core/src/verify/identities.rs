use crate::characters::{CharTable, EisensteinInt};
use crate::error::{Error, Result};
use crate::field::{FpPoly, FpSubset};
use crate::par;
use crate::search::cap;
use crate::setfun::{k_fold_sumset, same_field, FpFunction};
use crate::verify::{Fact, IdentityReport};

/// Default ceiling on `p^(k+1)` for [`verify_shkredov_correlation`].
pub const CORRELATION_COST_CAP: u64 = 10_000_000;

/// `Σ_{x⃗} C(f)(x⃗)·C(g)(x⃗)` over all `k`-tuples, by depth-first prefix
/// products so that each tuple costs `O(p)`.
fn correlation_pairing(f: &FpFunction, g: &FpFunction, k: usize) -> EisensteinInt {
    fn go(
        f: &FpFunction,
        g: &FpFunction,
        pf: &[EisensteinInt],
        pg: &[EisensteinInt],
        depth: usize,
    ) -> EisensteinInt {
        let p = pf.len();
        if depth == 0 {
            let cf: EisensteinInt = pf.iter().copied().sum();
            let cg: EisensteinInt = pg.iter().copied().sum();
            return cf * cg;
        }
        (0..p)
            .map(|t| {
                let (nf, ng) = shifted_products(f, g, pf, pg, t);
                go(f, g, &nf, &ng, depth - 1)
            })
            .sum()
    }
    let p = f.p() as usize;
    let (f0, g0) = (f.values(), g.values());
    par::map_range(p as u64, |t| {
        let (nf, ng) = shifted_products(f, g, f0, g0, t as usize);
        go(f, g, &nf, &ng, k - 1)
    })
    .into_iter()
    .sum()
}

fn shifted_products(
    f: &FpFunction,
    g: &FpFunction,
    pf: &[EisensteinInt],
    pg: &[EisensteinInt],
    t: usize,
) -> (Vec<EisensteinInt>, Vec<EisensteinInt>) {
    let p = pf.len();
    let idx = |x: usize| if x + t >= p { x + t - p } else { x + t };
    let nf = (0..p).map(|x| pf[x] * f.value(idx(x) as u32)).collect();
    let ng = (0..p).map(|x| pg[x] * g.value(idx(x) as u32)).collect();
    (nf, ng)
}

/// `Σ_x (f∘g)^{k+1}(x) = Σ_{x_1..x_k} C_{k+1}(f)·C_{k+1}(g)`.
pub fn verify_shkredov_correlation(
    f: &FpFunction,
    g: &FpFunction,
    k: usize,
    cost_cap: u64,
) -> Result<IdentityReport> {
    same_field(f.field(), g.field())?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "correlation order needs k >= 1".into(),
        ));
    }
    cap("k", k as u64, 4)?;
    let p = f.p() as u64;
    let cost = p.checked_pow(k as u32 + 1).unwrap_or(u64::MAX);
    cap("p^(k+1)", cost, cost_cap)?;
    let lhs: EisensteinInt = f
        .circ(g)?
        .values()
        .iter()
        .map(|v| v.pow(k as u32 + 1))
        .sum();
    let rhs = correlation_pairing(f, g, k);
    Ok(IdentityReport::new("correlation-moment", f.p(), lhs, rhs).with_k(k as i64))
}

/// `⟨f∘ψ, g∘ψ⟩` against its expansion in `⟨f,g⟩`, `⟨f⟩⟨ḡ⟩` and the two
/// Jacobi-weighted correlation terms.
pub fn verify_inner_product_identity(
    table: &CharTable,
    f: &FpFunction,
    g: &FpFunction,
) -> Result<IdentityReport> {
    same_field(f.field(), g.field())?;
    same_field(table.field(), f.field())?;
    let p = table.p();
    let j11 = table.jacobi_sum(1, 1)?;
    let j22 = table.jacobi_sum(2, 2)?;
    let psi = FpFunction::psi(table);
    let lhs = f.circ(&psi)?.inner_product(&g.circ(&psi)?)?;
    let fg = f.conj().circ(g)?;
    let chi1 = FpFunction::chi(table, 1);
    let chi2 = FpFunction::chi(table, 2);
    let rhs = f.inner_product(g)? * (2 * p as i64) - f.sum() * g.conj().sum() * 2
        + j11 * chi2.inner_product(&fg)?
        + j22 * chi1.inner_product(&fg)?;
    Ok(IdentityReport::new("psi-inner-product", p, lhs, rhs))
}

/// Direct `Σ_x H(x)` for `H(x) = (1+ψ(x))(2-ψ(x+b))(2-ψ(x-b))` against
/// `4p - 4Σψψ_b + Σψψ_{2b} + Σψψ_bψ_{2b}`. When every cube `x` has `x+b` or
/// `x-b` a cube, also certifies that `H` vanishes off 0 and sums to
/// `(2-ψ(b))²`.
pub fn verify_h_expansion(table: &CharTable, b: u32) -> Result<IdentityReport> {
    table.field().require_cubic()?;
    let field = table.field();
    let p = field.p();
    let b = b % p;
    let psi = |x: u32| table.psi(x);
    let h = |x: u32| (1 + psi(x)) * (2 - psi(field.add(x, b))) * (2 - psi(field.sub(x, b)));
    let direct: i64 = (0..p).map(h).sum();
    let b2 = field.add(b, b);
    let corr = |t: u32| -> i64 { (0..p).map(|x| psi(x) * psi(field.add(x, t))).sum() };
    let triple: i64 = (0..p)
        .map(|x| psi(x) * psi(field.add(x, b)) * psi(field.add(x, b2)))
        .sum();
    let expanded = 4 * p as i64 - 4 * corr(b) + corr(b2) + triple;

    let mut facts = vec![];
    let covered = field
        .cube_elements()
        .into_iter()
        .all(|x| field.is_cube(field.add(x, b)) || field.is_cube(field.sub(x, b)));
    if covered {
        let stray = (1..p).find(|&x| h(x) != 0);
        facts.push(Fact::new(
            "vanishes-off-zero",
            stray.is_none(),
            stray.map_or("H(x) = 0 for x != 0".into(), |x| {
                format!("H({x}) = {}", h(x))
            }),
        ));
        facts.push(Fact::eq("total-at-zero", direct, (2 - psi(b)).pow(2)));
    }
    Ok(IdentityReport::new(
        "h-expansion",
        p,
        EisensteinInt::from_int(direct),
        EisensteinInt::from_int(expanded),
    )
    .with_facts(facts))
}

/// `J(χ,χ²) = -1` together with `|J(χ,χ)|² = p`, `J(χ²,χ²) = conj J(χ,χ)`
/// and the low power sums of `ψ`. For `p < 1000` the autocorrelation
/// formula `Σψψ_b = χ²(b)J + χ(b)J̄ - 2` is also checked for every `b ≠ 0`.
pub fn verify_jacobi(table: &CharTable) -> Result<IdentityReport> {
    let p = table.p();
    let j12 = table.jacobi_sum(1, 2)?;
    let j11 = table.jacobi_sum(1, 1)?;
    let j22 = table.jacobi_sum(2, 2)?;
    let psi = table.psi_values();
    let moment = |e: u32| -> i64 { psi.iter().map(|&v| (v as i64).pow(e)).sum() };
    let n = 2 * (p as i64 - 1);
    let square_rule = (0..p).all(|x| table.psi(x).pow(2) == 2 * (x != 0) as i64 + table.psi(x));
    let mut facts = vec![
        Fact::eq("norm-j11", j11.norm(), p as i64),
        Fact::eq("j22-conj", j22, j11.conj()),
        Fact::eq("sum-psi", moment(1), 0),
        Fact::eq("sum-psi2", moment(2), n),
        Fact::eq("sum-psi3", moment(3), n),
        Fact::new("psi-square-rule", square_rule, "psi^2 = 2[x != 0] + psi"),
    ];
    if p < 1000 {
        let bad = (1..p).find(|&b| {
            let expect =
                table.chi(b, 2) * j11 + table.chi(b, 1) * j11.conj() - EisensteinInt::from_int(2);
            EisensteinInt::from_int(table.psi_autocorrelation(b)) != expect
        });
        facts.push(Fact::new(
            "autocorrelation",
            bad.is_none(),
            bad.map_or("all b".into(), |b| format!("mismatch at b = {b}")),
        ));
    }
    Ok(IdentityReport::new("jacobi", p, j12, EisensteinInt::from_int(-1)).with_facts(facts))
}

/// `|Σ_x χ^e(a f(x))|² ≤ (r-1)²p`. Fails when the hypothesis (f not a
/// perfect cube, `e` prime to 3) does not hold.
pub fn verify_weil(table: &CharTable, f: &FpPoly, power: u32, a: u32) -> Result<IdentityReport> {
    let s = table.char_sum(f, power, a)?;
    let r = s.distinct_roots as i64;
    let p = table.p();
    Ok(
        IdentityReport::at_most("weil", p, s.value.norm(), (r - 1).pow(2) * p as i64).with_facts(
            vec![Fact::new(
                "hypothesis",
                s.hypothesis_ok,
                format!("f = {f}, power {power}, a = {a}"),
            )],
        ),
    )
}

/// For integer-valued `f`: `‖f‖² = c⟨f⟩ + Σ_k N_k(k² - ck)` exactly, and
/// `‖f‖² ≥ c|⟨f⟩| - (c-1)|Σ_{0<|f(x)|<c} f(x)|`.
pub fn verify_shkredov_trick(f: &FpFunction, c: i64) -> Result<IdentityReport> {
    let ints = f.to_ints().map_err(|_| Error::NonIntegerValues)?;
    let hist = f.histogram()?;
    let norm = f.norm2_sq();
    let total: i64 = ints.iter().sum();
    let split = c * total
        + hist
            .counts
            .iter()
            .map(|(&k, &n)| n as i64 * (k * k - c * k))
            .sum::<i64>();
    let small: i64 = ints.iter().filter(|v| 0 < v.abs() && v.abs() < c).sum();
    let floor = c * total.abs() - (c - 1) * small.abs();
    Ok(IdentityReport::new(
        "integer-norm-split",
        f.p(),
        EisensteinInt::from_int(norm),
        EisensteinInt::from_int(split),
    )
    .with_facts(vec![
        Fact::new(
            "norm-floor",
            norm >= floor,
            format!("{norm} >= {floor} (c = {c})"),
        ),
        Fact::eq("histogram-total", hist.total(), f.p() as usize),
    ]))
}

/// `|A_1 + ... + A_k|^{k-1} ≤ Π_j |Σ_{i≠j} A_i|`.
pub fn verify_gmr(sets: &[FpSubset]) -> Result<IdentityReport> {
    let k = sets.len();
    if k < 2 {
        return Err(Error::InvalidArgument(
            "sumset product needs k >= 2 sets".into(),
        ));
    }
    for s in sets {
        same_field(sets[0].field(), s.field())?;
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
    }
    let full = k_fold_sumset(sets)?.card() as u128;
    let lhs = full.checked_pow(k as u32 - 1);
    let mut rhs = Some(1u128);
    for j in 0..k {
        let others: Vec<FpSubset> = (0..k)
            .filter(|&i| i != j)
            .map(|i| sets[i].clone())
            .collect();
        let c = k_fold_sumset(&others)?.card() as u128;
        rhs = rhs.and_then(|r| r.checked_mul(c));
    }
    let (lhs, rhs) = match (lhs, rhs) {
        (Some(l), Some(r)) => (l, r),
        _ => {
            return Err(Error::CapExceeded {
                what: "sumset product",
                value: k as u64,
                cap: 0,
            })
        }
    };
    let clamp = |v: u128| i64::try_from(v).unwrap_or(i64::MAX);
    let holds = lhs <= rhs;
    Ok(
        IdentityReport::at_most("sumset-product", sets[0].p(), clamp(lhs), clamp(rhs))
            .with_k(k as i64)
            .with_facts(vec![Fact::new(
                "exact-u128",
                holds,
                format!("{lhs} <= {rhs}"),
            )]),
    )
}
