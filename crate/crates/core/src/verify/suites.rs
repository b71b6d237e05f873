use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::field::{is_prime, primes_in, FpPoly, FpSubset, PrimeField};
use crate::par;
use crate::search::{search_diff_cover, search_pair, SearchConfig};
use crate::setfun::FpFunction;
use crate::verify::identities::{
    verify_gmr, verify_h_expansion, verify_inner_product_identity, verify_jacobi,
    verify_shkredov_correlation, verify_shkredov_trick, verify_weil, CORRELATION_COST_CAP,
};
use crate::verify::structure::{
    verify_c4_psi_structure, verify_cover_weight, verify_decomposition_moments,
    verify_diff_cover_moments, C4Scan,
};
use crate::verify::IdentityReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// `Σ(f∘g)^{k+1}` against paired correlations, random integer `f, g`.
    Correlation,
    /// `⟨f∘ψ, g∘ψ⟩` expansion, random integer (or Eisenstein) `f, g`.
    InnerProduct,
    /// Jacobi sums and power sums of `ψ` for every prime in range.
    Jacobi,
    /// Weil bound on random polynomials that are not cubes.
    Weil,
    /// `Σ H` against its four-term expansion, every prime and every `b`.
    HExpansion,
    /// Structure of the four-point correlation of `ψ`.
    FourPoint,
    /// Norm split of random integer functions for `c ∈ {-2, 3}`.
    IntegerNorm,
    /// Sumset product inequality on random triples plus edge cases.
    SumsetProduct,
    /// Moment identities on every pair and difference-cover witness in range.
    Moments,
    /// Cover weight `h` and size bounds on every pair witness in range.
    CoverWeight,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Correlation,
        Suite::InnerProduct,
        Suite::Jacobi,
        Suite::Weil,
        Suite::HExpansion,
        Suite::FourPoint,
        Suite::IntegerNorm,
        Suite::SumsetProduct,
        Suite::Moments,
        Suite::CoverWeight,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Correlation => "correlation",
            Suite::InnerProduct => "inner-product",
            Suite::Jacobi => "jacobi",
            Suite::Weil => "weil",
            Suite::HExpansion => "h-expansion",
            Suite::FourPoint => "four-point",
            Suite::IntegerNorm => "integer-norm",
            Suite::SumsetProduct => "sumset-product",
            Suite::Moments => "moments",
            Suite::CoverWeight => "cover-weight",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inputs shared by all suites; each suite reads the fields it needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    /// A single prime; overrides the range where a suite runs on one field.
    pub p: Option<u32>,
    pub pmin: u32,
    pub pmax: u32,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// Draw Eisenstein-valued rather than integer-valued test functions.
    pub complex: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            p: None,
            pmin: 2,
            pmax: 200,
            k: 1,
            trials: 100,
            seed: 0,
            complex: false,
        }
    }
}

impl SuiteParams {
    fn primes(&self) -> Vec<u32> {
        match self.p {
            Some(p) => vec![p],
            None => primes_in(self.pmin as u64, self.pmax as u64)
                .into_iter()
                .filter(|p| p % 3 == 1)
                .map(|p| p as u32)
                .collect(),
        }
    }

    fn single(&self, default: u32) -> u32 {
        self.p.unwrap_or(default)
    }
}

fn table(p: u32) -> Result<CharTable> {
    CharTable::for_prime(p as u64)
}

fn trials<F>(params: &SuiteParams, run: F) -> Result<Vec<IdentityReport>>
where
    F: Fn(u64, &mut ChaCha8Rng) -> Result<Vec<IdentityReport>> + Sync + Send,
{
    let seeds: Vec<u64> = (0..params.trials as u64)
        .map(|i| params.seed.wrapping_add(i))
        .collect();
    let out = par::map(&seeds, |&seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        run(seed, &mut rng).map(|v| {
            v.into_iter()
                .map(|r| r.with_seed(Some(seed)))
                .collect::<Vec<_>>()
        })
    });
    let mut reports = Vec::new();
    for r in out {
        reports.extend(r?);
    }
    Ok(reports)
}

fn random_function(field: &Arc<PrimeField>, rng: &mut ChaCha8Rng, complex: bool) -> FpFunction {
    if complex {
        FpFunction::random_eisenstein(field, rng, -3, 3)
    } else {
        FpFunction::random_int(field, rng, -3, 3)
    }
}

fn random_subset(field: &Arc<PrimeField>, rng: &mut ChaCha8Rng, max: usize) -> FpSubset {
    let p = field.p();
    let n = rng.random_range(1..=max.max(1));
    let mut s = FpSubset::empty(field);
    while s.card() < n {
        s.insert(rng.random_range(0..p));
    }
    s
}

/// Runs one suite. Reports come back in a fixed order that depends only on
/// the parameters, never on scheduling.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<Vec<IdentityReport>> {
    match suite {
        Suite::Correlation => {
            let t = table(params.single(13))?;
            let field = t.field().clone();
            trials(params, |_, rng| {
                let f = random_function(&field, rng, params.complex);
                let g = random_function(&field, rng, params.complex);
                Ok(vec![verify_shkredov_correlation(
                    &f,
                    &g,
                    params.k,
                    CORRELATION_COST_CAP,
                )?])
            })
        }
        Suite::InnerProduct => {
            let t = table(params.single(13))?;
            t.field().require_cubic()?;
            let field = t.field().clone();
            trials(params, |_, rng| {
                let f = random_function(&field, rng, params.complex);
                let g = random_function(&field, rng, params.complex);
                Ok(vec![verify_inner_product_identity(&t, &f, &g)?])
            })
        }
        Suite::Jacobi => collect(par::map(&params.primes(), |&p| verify_jacobi(&table(p)?))),
        Suite::Weil => {
            let pool: Vec<u32> = primes_in(7, params.pmax.max(7) as u64)
                .into_iter()
                .filter(|p| p % 3 == 1)
                .map(|p| p as u32)
                .collect();
            let pool = match params.p {
                Some(p) => vec![p],
                None => pool,
            };
            if pool.is_empty() {
                return Err(Error::InvalidArgument("no prime = 1 mod 3 in range".into()));
            }
            let tables: Vec<CharTable> = pool.iter().map(|&p| table(p)).collect::<Result<_>>()?;
            trials(params, |_, rng| {
                let t = &tables[rng.random_range(0..tables.len())];
                let p = t.p();
                loop {
                    let deg = rng.random_range(1..=5usize);
                    let mut coeffs: Vec<u32> = (0..deg).map(|_| rng.random_range(0..p)).collect();
                    coeffs.push(1);
                    let f = FpPoly::new(p, coeffs);
                    let power = rng.random_range(1..=2u32);
                    let a = rng.random_range(1..p);
                    let s = t.char_sum(&f, power, a)?;
                    if s.hypothesis_ok {
                        return Ok(vec![verify_weil(t, &f, power, a)?]);
                    }
                }
            })
        }
        Suite::HExpansion => {
            let jobs: Vec<(u32, u32)> = params
                .primes()
                .into_iter()
                .flat_map(|p| (0..p).map(move |b| (p, b)))
                .collect();
            let tables: Vec<(u32, CharTable)> = params
                .primes()
                .into_iter()
                .map(|p| table(p).map(|t| (p, t)))
                .collect::<Result<_>>()?;
            collect(par::map(&jobs, |&(p, b)| {
                let t = &tables.iter().find(|(q, _)| *q == p).expect("table built").1;
                verify_h_expansion(t, b).map(|r| r.with_k(b as i64))
            }))
        }
        Suite::FourPoint => {
            let primes = match params.p {
                Some(p) => vec![p],
                None => vec![13, 31],
            };
            primes
                .into_iter()
                .map(|p| {
                    let samples = params.trials.max(1) * 10;
                    let scan = match C4Scan::default_for(p, params.seed) {
                        C4Scan::Sampled { seed, .. } => C4Scan::Sampled { samples, seed },
                        s => s,
                    };
                    verify_c4_psi_structure(&table(p)?, scan)
                })
                .collect()
        }
        Suite::IntegerNorm => {
            let field = Arc::new(PrimeField::new(params.single(13) as u64)?);
            trials(params, |_, rng| {
                let f = FpFunction::random_int(&field, rng, -4, 4);
                [-2, 3]
                    .into_iter()
                    .map(|c| verify_shkredov_trick(&f, c).map(|r| r.with_k(c)))
                    .collect()
            })
        }
        Suite::SumsetProduct => {
            let p = params.single(31);
            if !is_prime(p as u64) {
                return Err(Error::NotPrime(p as u64));
            }
            let field = Arc::new(PrimeField::new(p as u64)?);
            let mut reports = sumset_product_edges(&field)?;
            reports.extend(trials(params, |_, rng| {
                let sets: Vec<FpSubset> = (0..3)
                    .map(|_| random_subset(&field, rng, (p as usize / 3).max(1)))
                    .collect();
                Ok(vec![verify_gmr(&sets)?])
            })?);
            Ok(reports)
        }
        Suite::Moments | Suite::CoverWeight => {
            let primes = match params.p {
                Some(p) => vec![p],
                None => params.primes(),
            };
            let mut reports = Vec::new();
            for p in primes {
                let t = table(p)?;
                let field = t.field().clone();
                let config = SearchConfig::default();
                for k in 2..=params.k.clamp(2, config.max_k) {
                    for r in search_pair(&field, k, &config)?.records {
                        let (a, b) = (&r.parts[0], &r.parts[1]);
                        reports.push(match suite {
                            Suite::Moments => verify_decomposition_moments(&t, a, b)?,
                            _ => verify_cover_weight(&t, b, a)?,
                        });
                    }
                }
                if suite == Suite::Moments && p <= config.backtrack_max_p {
                    for r in search_diff_cover(&field, &config)?.records {
                        reports.push(verify_diff_cover_moments(&t, &r.parts[0])?);
                    }
                }
            }
            Ok(reports)
        }
    }
}

fn collect(v: Vec<Result<IdentityReport>>) -> Result<Vec<IdentityReport>> {
    v.into_iter().collect()
}

fn sumset_product_edges(field: &Arc<PrimeField>) -> Result<Vec<IdentityReport>> {
    let p = field.p();
    let s = |e: &[u32]| FpSubset::from_elements(field, e.iter().copied());
    let full = FpSubset::full(field);
    let cases: Vec<Vec<FpSubset>> = vec![
        vec![s(&[0]), s(&[0]), s(&[0])],
        vec![s(&[1]), s(&[2]), s(&[p - 1])],
        vec![s(&[0]), s(&[5])],
        vec![s(&[0, 1]), s(&[0, 1]), s(&[0, 1])],
        vec![full.clone(), s(&[0]), s(&[3])],
        vec![full.clone(), full.clone(), full],
        vec![s(&[0, 1, 2]), s(&[0]), s(&[0]), s(&[7])],
    ];
    cases.iter().map(|c| verify_gmr(c)).collect()
}
