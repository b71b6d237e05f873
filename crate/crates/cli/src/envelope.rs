//! The JSON report format and its conversions from core types.

use std::sync::Arc;

use ffcube_core::search::{Normalization, SearchParams};
use ffcube_core::verify::{BoundCheck, Fact, Relation};
use ffcube_core::{
    check_bounds, DecompositionKind, DecompositionRecord, EisensteinInt, Error, FpSubset,
    IdentityReport, PrimeField, ScanRow,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub version: u32,
    pub chi_convention: String,
    pub task: String,
    pub params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<RowJson>,
    #[serde(default)]
    pub records: Vec<RecordJson>,
    #[serde(default)]
    pub reports: Vec<ReportJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub issues: Vec<String>,
    pub wall_time: f64,
}

impl Envelope {
    pub fn new(task: impl Into<String>, params: Value) -> Self {
        Envelope {
            version: FORMAT_VERSION,
            chi_convention: ffcube_core::CHI_CONVENTION.to_string(),
            task: task.into(),
            params,
            field: None,
            rows: vec![],
            records: vec![],
            reports: vec![],
            issues: vec![],
            wall_time: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisJson {
    pub a: i64,
    pub b: i64,
}

impl From<EisensteinInt> for EisJson {
    fn from(z: EisensteinInt) -> Self {
        EisJson { a: z.a, b: z.b }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiJson {
    pub chi_chi2: EisJson,
    pub chi_chi: EisJson,
    pub norm_chi_chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub generator: u64,
    pub residue_class: u64,
    pub cube_count: usize,
    /// Omitted when `cube_count` exceeds the elision threshold.
    pub cubes: Option<Vec<u32>>,
    pub cubes_elided: bool,
    pub jacobi: Option<JacobiJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub p: u32,
    pub task: String,
    pub status: String,
    pub exhaustive: bool,
    pub witnesses: usize,
    pub failed_reports: usize,
}

impl RowJson {
    pub fn from_row(row: &ScanRow) -> Self {
        RowJson {
            p: row.p,
            task: row.task.to_string(),
            status: row.status().to_string(),
            exhaustive: row.exhaustive,
            witnesses: row.records.len(),
            failed_reports: row.reports.iter().filter(|r| !r.passed()).count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundJson {
    pub id: String,
    pub applicable: bool,
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
    pub tight: bool,
}

impl From<&BoundCheck> for BoundJson {
    fn from(c: &BoundCheck) -> Self {
        BoundJson {
            id: c.id.clone(),
            applicable: c.applicable,
            lhs: c.lhs,
            rhs: c.rhs,
            holds: c.holds,
            tight: c.tight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub p: u32,
    pub kind: String,
    pub parts: Vec<Vec<u32>>,
    pub exhaustive: bool,
    pub bounds: Vec<BoundJson>,
}

impl RecordJson {
    pub fn from_record(r: &DecompositionRecord) -> Self {
        RecordJson {
            p: r.p,
            kind: r.kind.to_string(),
            parts: r.parts.iter().map(FpSubset::to_vec).collect(),
            exhaustive: r.params.exhaustive,
            bounds: check_bounds(r).checks.iter().map(BoundJson::from).collect(),
        }
    }

    /// Rebuilds the core record; elements must already be reduced mod `p`.
    pub fn to_record(&self) -> Result<DecompositionRecord, Error> {
        let kind = DecompositionKind::parse(&self.kind)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown kind {:?}", self.kind)))?;
        let field = Arc::new(PrimeField::new(self.p as u64)?);
        if let Some(x) = self.parts.iter().flatten().find(|&&x| x >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "element {x} is not reduced mod {}",
                self.p
            )));
        }
        let parts = self
            .parts
            .iter()
            .map(|v| FpSubset::from_elements(&field, v.iter().copied()))
            .collect();
        Ok(DecompositionRecord {
            p: self.p,
            kind,
            parts,
            normalization: Normalization::identity(),
            params: SearchParams {
                exhaustive: self.exhaustive,
                ..SearchParams::default()
            },
        })
    }

    pub fn failed_bounds(&self) -> impl Iterator<Item = &BoundJson> {
        self.bounds.iter().filter(|b| b.applicable && !b.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactJson {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl From<&Fact> for FactJson {
    fn from(f: &Fact) -> Self {
        FactJson {
            name: f.name.clone(),
            holds: f.holds,
            detail: f.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub id: String,
    pub p: u32,
    pub k: Option<i64>,
    pub seed: Option<u64>,
    pub relation: String,
    pub lhs: EisJson,
    pub rhs: EisJson,
    pub exact_equal: bool,
    pub passed: bool,
    pub facts: Vec<FactJson>,
}

impl From<&IdentityReport> for ReportJson {
    fn from(r: &IdentityReport) -> Self {
        ReportJson {
            id: r.id.to_string(),
            p: r.p,
            k: r.k,
            seed: r.seed,
            relation: match r.relation {
                Relation::Equal => "equal",
                Relation::AtMost => "at_most",
            }
            .to_string(),
            lhs: r.lhs.into(),
            rhs: r.rhs.into(),
            exact_equal: r.exact_equal,
            passed: r.passed(),
            facts: r.facts.iter().map(FactJson::from).collect(),
        }
    }
}

/// One flattened line of a CSV scan summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsvRow {
    pub p: u32,
    pub task: String,
    pub status: String,
    pub exhaustive: bool,
    pub witnesses: usize,
    /// Part sizes per witness, `2+2;3+2` style.
    pub part_sizes: String,
    pub reports: usize,
    pub failed_reports: usize,
}

impl CsvRow {
    pub fn from_row(row: &ScanRow) -> Self {
        CsvRow {
            p: row.p,
            task: row.task.to_string(),
            status: row.status().to_string(),
            exhaustive: row.exhaustive,
            witnesses: row.records.len(),
            part_sizes: row
                .records
                .iter()
                .map(|r| {
                    r.part_sizes()
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join("+")
                })
                .collect::<Vec<_>>()
                .join(";"),
            reports: row.reports.len(),
            failed_reports: row.reports.iter().filter(|r| !r.passed()).count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ffcube_core::{search_pair, SearchConfig};

    #[test]
    fn record_round_trip() {
        let field = Arc::new(PrimeField::new(13).unwrap());
        let out = search_pair(&field, 2, &SearchConfig::default()).unwrap();
        let mut env = Envelope::new("search pair", serde_json::json!({"p": 13}));
        env.records = out.records.iter().map(RecordJson::from_record).collect();
        env.wall_time = 0.123456789;
        let text = serde_json::to_string_pretty(&env).unwrap();
        let back: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, env);
        let rebuilt = back.records[0].to_record().unwrap();
        rebuilt.validate().unwrap();
        assert_eq!(RecordJson::from_record(&rebuilt), env.records[0]);
    }

    #[test]
    fn unreduced_elements_rejected() {
        let r = RecordJson {
            p: 7,
            kind: "diffcover".into(),
            parts: vec![vec![0, 8]],
            exhaustive: true,
            bounds: vec![],
        };
        assert!(matches!(r.to_record(), Err(Error::InvalidArgument(_))));
    }
}
