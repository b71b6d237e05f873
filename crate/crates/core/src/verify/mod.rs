//! Exact certification of character-sum identities, moment identities and
//! size bounds, either on concrete inputs or over seeded random trials.

mod identities;
mod structure;
mod suites;

use std::fmt;

pub use identities::{
    verify_gmr, verify_h_expansion, verify_inner_product_identity, verify_jacobi,
    verify_shkredov_correlation, verify_shkredov_trick, verify_weil, CORRELATION_COST_CAP,
};
pub use structure::{
    verify_c4_psi_structure, verify_cover_weight, verify_decomposition_moments,
    verify_diff_cover_moments, C4Scan,
};
pub use suites::{run_suite, Suite, SuiteParams};

use crate::bounds::{self, Comparison};
use crate::characters::EisensteinInt;
use crate::search::{DecompositionKind, DecompositionRecord, TRIPLE_EXCLUSION_THRESHOLD};
use crate::setfun::sumset;

/// Smallest `p` for which the two-sided `√p` size bounds on pair
/// decompositions are asserted.
pub const SQRT_BOUNDS_MIN_P: u64 = 9096;

/// How the two sides of a report are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// `lhs ≤ rhs` as rational integers.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Fact {
    pub fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Fact {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }

    pub(crate) fn eq<T: PartialEq + fmt::Display>(name: &str, lhs: T, rhs: T) -> Self {
        let holds = lhs == rhs;
        Fact::new(
            name,
            holds,
            format!("{lhs} {} {rhs}", if holds { "=" } else { "!=" }),
        )
    }

    pub(crate) fn cmp(name: &str, c: Comparison) -> Self {
        Fact::new(
            name,
            c.holds,
            format!("{} {} {}", c.lhs, if c.holds { "<=" } else { ">" }, c.rhs),
        )
    }
}

/// The outcome of one identity or inequality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: &'static str,
    pub p: u32,
    /// Main integer parameter: moment order, shift, constant or set count.
    pub k: Option<i64>,
    pub seed: Option<u64>,
    pub lhs: EisensteinInt,
    pub rhs: EisensteinInt,
    pub relation: Relation,
    pub exact_equal: bool,
    /// Side conditions checked alongside the main relation.
    pub facts: Vec<Fact>,
}

impl IdentityReport {
    pub(crate) fn new(id: &'static str, p: u32, lhs: EisensteinInt, rhs: EisensteinInt) -> Self {
        IdentityReport {
            id,
            p,
            k: None,
            seed: None,
            lhs,
            rhs,
            relation: Relation::Equal,
            exact_equal: lhs == rhs,
            facts: vec![],
        }
    }

    pub(crate) fn at_most(id: &'static str, p: u32, lhs: i64, rhs: i64) -> Self {
        IdentityReport {
            relation: Relation::AtMost,
            ..Self::new(
                id,
                p,
                EisensteinInt::from_int(lhs),
                EisensteinInt::from_int(rhs),
            )
        }
    }

    pub(crate) fn with_k(mut self, k: i64) -> Self {
        self.k = Some(k);
        self
    }

    pub(crate) fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub(crate) fn with_facts(mut self, facts: Vec<Fact>) -> Self {
        self.facts.extend(facts);
        self
    }

    /// Whether the main relation holds.
    pub fn relation_holds(&self) -> bool {
        match self.relation {
            Relation::Equal => self.exact_equal,
            Relation::AtMost => match (self.lhs.as_int(), self.rhs.as_int()) {
                (Some(l), Some(r)) => l <= r,
                _ => false,
            },
        }
    }

    pub fn failed_facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter().filter(|f| !f.holds)
    }

    pub fn passed(&self) -> bool {
        self.relation_holds() && self.facts.iter().all(|f| f.holds)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match (self.relation, self.relation_holds()) {
            (Relation::Equal, true) => "=",
            (Relation::Equal, false) => "!=",
            (Relation::AtMost, true) => "<=",
            (Relation::AtMost, false) => ">",
        };
        write!(
            f,
            "{} p={} lhs={} {op} rhs={} [{}]",
            self.id,
            self.p,
            self.lhs,
            self.rhs,
            if self.passed() { "ok" } else { "FAIL" }
        )?;
        for fact in self.failed_facts() {
            write!(f, "; {}: {}", fact.name, fact.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub id: String,
    pub applicable: bool,
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
    pub tight: bool,
}

impl BoundCheck {
    fn from_cmp(id: impl Into<String>, applicable: bool, c: Comparison) -> Self {
        BoundCheck {
            id: id.into(),
            applicable,
            lhs: c.lhs,
            rhs: c.rhs,
            holds: c.holds,
            tight: c.tight,
        }
    }
}

/// Every size bound relevant to a record's kind, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub p: u32,
    pub kind: DecompositionKind,
    pub sizes: Vec<usize>,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn check(&self, id: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn applicable(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| c.applicable)
    }

    pub fn inapplicable(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.applicable)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.applicable().filter(|c| !c.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.failures().next().is_none()
    }
}

fn sqrt_size_checks(out: &mut Vec<BoundCheck>, label: &str, sizes: [u64; 2], p: u64) {
    let applicable = p >= SQRT_BOUNDS_MIN_P && sizes.iter().all(|&s| s >= 2);
    for (name, s) in ["A", "B"].iter().zip(sizes) {
        out.push(BoundCheck::from_cmp(
            format!("size-sqrt-lower[{label}{name}]"),
            applicable,
            bounds::sqrt_p_over_18_le(s, p),
        ));
        out.push(BoundCheck::from_cmp(
            format!("size-sqrt-upper[{label}{name}]"),
            applicable,
            bounds::le_three_sqrt_p_plus_269(s, p),
        ));
    }
}

fn pair_checks(out: &mut Vec<BoundCheck>, a: u64, b: u64, p: u64) {
    sqrt_size_checks(out, "", [a, b], p);
    let (big, k) = (a.max(b), a.min(b));
    let applicable = (2..=40).contains(&k);
    let kk = k.clamp(1, 40) as u32;
    out.push(BoundCheck::from_cmp(
        "pair-size-lower",
        applicable,
        bounds::pair_size_lower(big, k, p),
    ));
    out.push(BoundCheck::from_cmp(
        "pair-size-middle",
        applicable,
        bounds::pair_size_middle(big, kk, p),
    ));
    out.push(BoundCheck::from_cmp(
        "pair-size-upper",
        applicable,
        bounds::pair_size_upper(big, kk, p),
    ));
    out.push(BoundCheck::from_cmp(
        "equal-size-lower",
        a == b,
        bounds::sqrt_cube_density_le(a, p),
    ));
    out.push(BoundCheck::from_cmp(
        "equal-size-upper",
        a == b,
        bounds::le_sqrt_p(a, p),
    ));
    out.push(BoundCheck::from_cmp(
        "pair-moment[A,B]",
        true,
        bounds::pair_moment_bound(a, b, p),
    ));
    out.push(BoundCheck::from_cmp(
        "pair-moment[B,A]",
        true,
        bounds::pair_moment_bound(b, a, p),
    ));
}

/// Evaluates every bound that applies to the record's kind. Checks whose
/// hypotheses fail are kept but marked inapplicable.
pub fn check_bounds(record: &DecompositionRecord) -> BoundReport {
    let p = record.p as u64;
    let sizes = record.part_sizes();
    let s: Vec<u64> = sizes.iter().map(|&x| x as u64).collect();
    let mut checks = Vec::new();
    match record.kind {
        DecompositionKind::Pair => pair_checks(&mut checks, s[0], s[1], p),
        DecompositionKind::SelfSum => {
            pair_checks(&mut checks, s[0], s[0], p);
            checks.push(BoundCheck::from_cmp(
                "self-sum-lower",
                true,
                bounds::self_sum_lower(s[0], p),
            ));
        }
        DecompositionKind::DiffCover => {
            let a = s[0];
            checks.push(BoundCheck::from_cmp(
                "diff-cover-lower",
                true,
                bounds::diff_cover_lower(a, p),
            ));
            checks.push(BoundCheck::from_cmp(
                "diff-cover-upper",
                true,
                bounds::diff_cover_upper(a, p),
            ));
            checks.push(BoundCheck::from_cmp(
                "diff-cover-counting",
                a >= 1,
                bounds::diff_cover_counting(a, p),
            ));
            checks.push(BoundCheck::from_cmp(
                "diff-cover-golden",
                a >= 1,
                bounds::golden_ratio_bound(a, p),
            ));
        }
        DecompositionKind::Triple => {
            let parts = &record.parts;
            let sum =
                |i: usize, j: usize| sumset(&parts[i], &parts[j]).map_or(0, |x| x.card() as u64);
            let (ab, bc, ca) = (sum(0, 1), sum(1, 2), sum(2, 0));
            for (label, [x, y]) in [
                ("AB+", [ab, s[2]]),
                ("BC+", [bc, s[0]]),
                ("CA+", [ca, s[1]]),
            ] {
                sqrt_size_checks(&mut checks, label, [x, y], p);
            }
            let total = (p as i128 - 1) / 3;
            checks.push(BoundCheck::from_cmp(
                "sumset-product",
                true,
                Comparison::le(total * total, ab as i128 * bc as i128 * ca as i128),
            ));
            checks.push(BoundCheck {
                id: "three-part-exclusion".into(),
                applicable: p > TRIPLE_EXCLUSION_THRESHOLD as u64,
                lhs: p as i128,
                rhs: TRIPLE_EXCLUSION_THRESHOLD as i128,
                holds: p <= TRIPLE_EXCLUSION_THRESHOLD as u64,
                tight: false,
            });
        }
    }
    BoundReport {
        p: record.p,
        kind: record.kind,
        sizes,
        checks,
    }
}
