//! Exact cubic-character machinery over prime fields, sumset algebra, and
//! exhaustive searches for additive decompositions of the cube set
//! `C_p = {x^3 : x ∈ F_p^×}`.
//!
//! All identity checks run in exact integer or Eisenstein-integer arithmetic;
//! inequalities involving square roots are decided by comparing integer squares.
//!
//! ```
//! use std::sync::Arc;
//! use ffcube_core::{search_pair, PrimeField, SearchConfig};
//!
//! let field = Arc::new(PrimeField::new(13).unwrap());
//! let out = search_pair(&field, 2, &SearchConfig::default()).unwrap();
//! assert!(out.exhaustive());
//! assert_eq!(out.records[0].describe(), "A={1,8} B={0,4}");
//! ```

pub mod bounds;
pub mod characters;
pub mod error;
pub mod field;
pub mod par;
pub mod scan;
pub mod search;
pub mod setfun;
pub mod verify;

pub use characters::{CharTable, EisensteinInt, CHI_CONVENTION};
pub use error::{Error, Result};
pub use field::{CubeClass, FieldConfig, FpPoly, FpSubset, PrimeField};
pub use scan::{run_scan, ScanConfig, ScanRow, ScanTask};
pub use search::{
    search_diff_cover, search_pair, search_self_sum, search_triple, DecompositionKind,
    DecompositionRecord, SearchConfig, SearchOutcome,
};
pub use setfun::{FpFunction, ValueHistogram};
pub use verify::{check_bounds, run_suite, BoundReport, IdentityReport, Suite, SuiteParams};
