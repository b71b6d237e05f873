//! Per-prime scans over a range, run on a worker pool and returned in
//! ascending order of `p`.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::field::{primes_in, PrimeField};
use crate::par;
use crate::search::{
    search_diff_cover, search_pair, search_self_sum, search_triple, DecompositionRecord,
    SearchConfig,
};
use crate::setfun::FpFunction;
use crate::verify::{
    run_suite, verify_h_expansion, verify_inner_product_identity, verify_jacobi,
    verify_shkredov_trick, IdentityReport, Suite, SuiteParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScanTask {
    Pair2,
    Pair3,
    DiffCover,
    SelfSum,
    Triple,
    Identities,
    Weil,
}

impl ScanTask {
    pub const ALL: [ScanTask; 7] = [
        ScanTask::Pair2,
        ScanTask::Pair3,
        ScanTask::DiffCover,
        ScanTask::SelfSum,
        ScanTask::Triple,
        ScanTask::Identities,
        ScanTask::Weil,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScanTask::Pair2 => "pair2",
            ScanTask::Pair3 => "pair3",
            ScanTask::DiffCover => "diffcover",
            ScanTask::SelfSum => "selfsum",
            ScanTask::Triple => "triple",
            ScanTask::Identities => "identities",
            ScanTask::Weil => "weil",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ScanTask::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for ScanTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub task: ScanTask,
    pub pmin: u32,
    pub pmax: u32,
    pub threads: usize,
    pub seed: u64,
    /// Random trials per prime for the sampled tasks.
    pub trials: usize,
    /// Part-size cap for the triple task.
    pub max_part: usize,
    pub search: SearchConfig,
}

impl ScanConfig {
    pub fn new(task: ScanTask, pmin: u32, pmax: u32) -> Self {
        ScanConfig {
            task,
            pmin,
            pmax,
            threads: par::available_threads(),
            seed: 0,
            trials: 10,
            max_part: 2,
            search: SearchConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pmin > self.pmax {
            return Err(Error::InvalidArgument(format!(
                "pmin {} exceeds pmax {}",
                self.pmin, self.pmax
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidArgument("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// Primes `≡ 1 (mod 3)` in `[pmin, pmax]`.
    pub fn primes(&self) -> Vec<u32> {
        primes_in(self.pmin as u64, self.pmax as u64)
            .into_iter()
            .filter(|p| p % 3 == 1)
            .map(|p| p as u32)
            .collect()
    }
}

/// One prime's outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub p: u32,
    pub task: ScanTask,
    pub records: Vec<DecompositionRecord>,
    /// For search tasks: an empty `records` certifies nonexistence.
    pub exhaustive: bool,
    pub reports: Vec<IdentityReport>,
}

impl ScanRow {
    pub fn is_search(&self) -> bool {
        !matches!(self.task, ScanTask::Identities | ScanTask::Weil)
    }

    /// `"witness"`, `"none"`, `"pass"` or `"fail"`.
    pub fn status(&self) -> &'static str {
        if self.is_search() {
            if self.records.is_empty() {
                "none"
            } else {
                "witness"
            }
        } else if self.reports.iter().all(IdentityReport::passed) {
            "pass"
        } else {
            "fail"
        }
    }
}

fn scan_prime(config: &ScanConfig, p: u32) -> Result<ScanRow> {
    let field = Arc::new(PrimeField::new(p as u64)?);
    let cfg = &config.search;
    let outcome = match config.task {
        ScanTask::Pair2 => Some(search_pair(&field, 2, cfg)?),
        ScanTask::Pair3 => Some(search_pair(&field, 3, cfg)?),
        ScanTask::DiffCover => Some(search_diff_cover(&field, cfg)?),
        ScanTask::SelfSum => Some(search_self_sum(&field, cfg)?),
        ScanTask::Triple => Some(search_triple(&field, config.max_part, cfg)?),
        ScanTask::Identities | ScanTask::Weil => None,
    };
    if let Some(o) = outcome {
        return Ok(ScanRow {
            p,
            task: config.task,
            exhaustive: o.exhaustive(),
            records: o.records,
            reports: vec![],
        });
    }
    let seed = config.seed.wrapping_add(p as u64);
    let reports = match config.task {
        ScanTask::Identities => {
            let table = CharTable::new(field.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = FpFunction::random_int(&field, &mut rng, -3, 3);
            let g = FpFunction::random_int(&field, &mut rng, -3, 3);
            vec![
                verify_jacobi(&table)?,
                verify_h_expansion(&table, 1)?,
                verify_inner_product_identity(&table, &f, &g)?.with_seed(Some(seed)),
                verify_shkredov_trick(&f, 3)?.with_seed(Some(seed)),
            ]
        }
        _ => run_suite(
            Suite::Weil,
            &SuiteParams {
                p: Some(p),
                trials: config.trials,
                seed,
                ..SuiteParams::default()
            },
        )?,
    };
    Ok(ScanRow {
        p,
        task: config.task,
        records: vec![],
        exhaustive: false,
        reports,
    })
}

/// Runs `config.task` on every prime `≡ 1 (mod 3)` in range, using
/// `config.threads` workers.
pub fn run_scan(config: &ScanConfig) -> Result<Vec<ScanRow>> {
    config.validate()?;
    let primes = config.primes();
    let rows = par::with_threads(config.threads, || {
        par::map(&primes, |&p| scan_prime(config, p))
    });
    let mut rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.p);
    Ok(rows)
}
