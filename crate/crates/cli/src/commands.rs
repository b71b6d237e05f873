use std::sync::Arc;

use ffcube_core::{
    run_scan, run_suite, search_diff_cover, search_pair, search_self_sum, search_triple, CharTable,
    Error, IdentityReport, PrimeField, ScanConfig, ScanRow, ScanTask, SearchConfig, SearchOutcome,
    Suite, SuiteParams,
};
use serde_json::json;

use crate::args::{ScanArgs, SearchKind, VerifyArgs};
use crate::envelope::{CsvRow, Envelope, FieldJson, JacobiJson, RecordJson, ReportJson, RowJson};

/// Largest cube set printed element by element.
pub const ELISION_THRESHOLD: usize = 64;

const SUITE_ALIASES: [(&str, Suite); 8] = [
    ("lemma24", Suite::Correlation),
    ("lemma41", Suite::InnerProduct),
    ("hexp", Suite::HExpansion),
    ("c4", Suite::FourPoint),
    ("lemma51", Suite::IntegerNorm),
    ("gmr", Suite::SumsetProduct),
    ("lemma31", Suite::SumsetProduct),
    ("lemma23", Suite::CoverWeight),
];

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_capacity() => 3,
            Failure::Core(Error::Revalidation(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

/// A finished command: its report, optional CSV rows, and whether any
/// check failed.
pub struct Outcome {
    pub envelope: Envelope,
    pub csv: Option<Vec<CsvRow>>,
    pub failed: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(envelope: Envelope) -> Self {
        let failed = !envelope.issues.is_empty()
            || envelope.reports.iter().any(|r| !r.passed)
            || envelope
                .records
                .iter()
                .any(|r| r.failed_bounds().next().is_some());
        Outcome {
            envelope,
            csv: None,
            failed,
            warnings: vec![],
        }
    }
}

pub fn parse_suite(name: &str) -> Option<Vec<Suite>> {
    let name = name.to_ascii_lowercase();
    if name == "all" {
        return Some(Suite::ALL.to_vec());
    }
    Suite::parse(&name)
        .or_else(|| {
            SUITE_ALIASES
                .iter()
                .find(|(a, _)| *a == name)
                .map(|(_, s)| *s)
        })
        .map(|s| vec![s])
}

pub fn field(p: u64) -> Result<Outcome, Failure> {
    let field = Arc::new(PrimeField::new(p)?);
    let cubes = field.cube_elements();
    let jacobi = if field.has_cubic_character() {
        let table = CharTable::new(field.clone());
        let j12 = table.jacobi_sum(1, 2)?;
        let j11 = table.jacobi_sum(1, 1)?;
        Some(JacobiJson {
            chi_chi2: j12.into(),
            chi_chi: j11.into(),
            norm_chi_chi: j11.norm(),
        })
    } else {
        None
    };
    let elided = cubes.len() > ELISION_THRESHOLD;
    let mut env = Envelope::new("field", json!({ "p": p }));
    env.field = Some(FieldJson {
        p,
        generator: field.generator() as u64,
        residue_class: p % 3,
        cube_count: cubes.len(),
        cubes_elided: elided,
        cubes: (!elided).then_some(cubes),
        jacobi,
    });
    let mut out = Outcome::new(env);
    if !field.has_cubic_character() {
        out.warnings.push(format!(
            "p = {p} is not 1 mod 3: cubing is a bijection and C_p is all of F_p^×"
        ));
    }
    Ok(out)
}

fn row_from_outcome(o: &SearchOutcome, task: &str) -> RowJson {
    RowJson {
        p: o.p,
        task: task.to_string(),
        status: if o.records.is_empty() {
            "none"
        } else {
            "witness"
        }
        .to_string(),
        exhaustive: o.exhaustive(),
        witnesses: o.records.len(),
        failed_reports: 0,
    }
}

pub fn search(kind: &SearchKind) -> Result<Outcome, Failure> {
    let config = SearchConfig::default();
    let (p, task, params) = match *kind {
        SearchKind::Pair { p, k } => (p, "pair", json!({ "p": p, "k": k })),
        SearchKind::Selfsum { p } => (p, "selfsum", json!({ "p": p })),
        SearchKind::Diffcover { p } => (p, "diffcover", json!({ "p": p })),
        SearchKind::Triple { p, max_part } => {
            (p, "triple", json!({ "p": p, "max_part": max_part }))
        }
    };
    let field = Arc::new(PrimeField::new(p)?);
    let outcome = match *kind {
        SearchKind::Pair { k, .. } => search_pair(&field, k, &config)?,
        SearchKind::Selfsum { .. } => search_self_sum(&field, &config)?,
        SearchKind::Diffcover { .. } => search_diff_cover(&field, &config)?,
        SearchKind::Triple { max_part, .. } => search_triple(&field, max_part, &config)?,
    };
    for r in &outcome.records {
        r.validate()?;
    }
    let mut env = Envelope::new(format!("search {task}"), params);
    env.rows = vec![row_from_outcome(&outcome, task)];
    env.records = outcome
        .records
        .iter()
        .map(RecordJson::from_record)
        .collect();
    Ok(Outcome::new(env))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let suites = parse_suite(&args.suite)
        .ok_or_else(|| Failure::Usage(format!("unknown suite {:?}", args.suite)))?;
    let params = SuiteParams {
        p: args.p,
        pmin: args.pmin,
        pmax: args.pmax,
        k: args.k,
        trials: args.trials,
        seed: args.seed,
        complex: args.complex,
    };
    let mut reports: Vec<IdentityReport> = vec![];
    for s in &suites {
        reports.extend(run_suite(*s, &params)?);
    }
    let names: Vec<&str> = suites.iter().map(|s| s.as_str()).collect();
    let mut env = Envelope::new(
        "verify",
        json!({
            "suite": names,
            "p": args.p,
            "pmin": args.pmin,
            "pmax": args.pmax,
            "k": args.k,
            "trials": args.trials,
            "seed": args.seed,
            "complex": args.complex,
        }),
    );
    env.reports = reports.iter().map(ReportJson::from).collect();
    let mut out = Outcome::new(env);
    out.warnings = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("FAIL {r}"))
        .collect();
    Ok(out)
}

pub fn scan(args: &ScanArgs, threads: usize) -> Result<Outcome, Failure> {
    let task = ScanTask::parse(&args.task.to_ascii_lowercase())
        .ok_or_else(|| Failure::Usage(format!("unknown scan task {:?}", args.task)))?;
    let config = ScanConfig {
        seed: args.seed,
        trials: args.trials,
        max_part: args.max_part,
        threads,
        ..ScanConfig::new(task, args.pmin, args.pmax)
    };
    let rows: Vec<ScanRow> = run_scan(&config)?;
    let mut env = Envelope::new(
        "scan",
        json!({
            "task": task.as_str(),
            "pmin": args.pmin,
            "pmax": args.pmax,
            "seed": args.seed,
            "trials": args.trials,
            "max_part": args.max_part,
        }),
    );
    env.rows = rows.iter().map(RowJson::from_row).collect();
    for row in &rows {
        env.records
            .extend(row.records.iter().map(RecordJson::from_record));
        env.reports.extend(row.reports.iter().map(ReportJson::from));
    }
    let mut out = Outcome::new(env);
    out.csv = Some(rows.iter().map(CsvRow::from_row).collect());
    Ok(out)
}

/// Re-checks every record of a saved report: the defining sumset, the stored
/// bound values, and that every applicable bound holds.
pub fn bounds(saved: &Envelope, source: &str) -> Result<Outcome, Failure> {
    let mut env = Envelope::new(
        "bounds",
        json!({ "input": source, "source_task": saved.task, "source_version": saved.version }),
    );
    for (i, stored) in saved.records.iter().enumerate() {
        let record = match stored.to_record() {
            Ok(r) => r,
            Err(e) => {
                env.issues.push(format!("record {i}: {e}"));
                continue;
            }
        };
        if let Err(e) = record.validate() {
            env.issues.push(format!("record {i}: {e}"));
        }
        let fresh = RecordJson::from_record(&record);
        if !stored.bounds.is_empty() && stored.bounds != fresh.bounds {
            env.issues.push(format!(
                "record {i}: stored bound values differ from recomputation"
            ));
        }
        for b in fresh.failed_bounds() {
            env.issues.push(format!(
                "record {i}: bound {} fails ({} vs {})",
                b.id, b.lhs, b.rhs
            ));
        }
        env.records.push(fresh);
    }
    let mut out = Outcome::new(env);
    out.warnings = out.envelope.issues.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_aliases_resolve() {
        assert_eq!(parse_suite("lemma24"), Some(vec![Suite::Correlation]));
        assert_eq!(parse_suite("Jacobi"), Some(vec![Suite::Jacobi]));
        assert_eq!(parse_suite("all").unwrap().len(), Suite::ALL.len());
        assert_eq!(parse_suite("nope"), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Core(Error::NotPrime(12)).exit_code(), 2);
        let cap = Error::CapExceeded {
            what: "k",
            value: 9,
            cap: 3,
        };
        assert_eq!(Failure::Core(cap).exit_code(), 3);
        assert_eq!(
            Failure::Core(Error::Revalidation("x".into())).exit_code(),
            1
        );
        assert_eq!(Failure::Usage("x".into()).exit_code(), 2);
    }

    #[test]
    fn tampered_record_is_flagged() {
        let out = search(&SearchKind::Pair { p: 13, k: 2 }).unwrap();
        let mut saved = out.envelope.clone();
        saved.records[0].parts[0] = vec![1, 6];
        let checked = bounds(&saved, "test").unwrap();
        assert!(checked.failed);
        let clean = bounds(&out.envelope, "test").unwrap();
        assert!(!clean.failed, "{:?}", clean.envelope.issues);
    }
}
