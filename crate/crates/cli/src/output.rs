//! JSON documents and CSV rows emitted by the commands.
//!
//! Every JSON document carries `"schema_version": 1`.

use iepoly::analyzer::{FlatScan, Finding, RecursiveBoundReport, ResidueClassReport, Verdict, VerifyReport};
use iepoly::CoeffSummary;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeDoc {
    pub schema_version: u32,
    pub rho: Vec<u64>,
    pub degree: u64,
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeDoc {
    pub schema_version: u32,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    #[serde(flatten)]
    pub summary: CoeffSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueScanDoc {
    pub schema_version: u32,
    pub p: u64,
    pub q: u64,
    pub r_max: u64,
    pub passed: bool,
    pub classes: Vec<ResidueClassReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatScanDoc {
    pub schema_version: u32,
    pub passed: bool,
    #[serde(flatten)]
    pub scan: FlatScan,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsScanDoc {
    pub schema_version: u32,
    pub p: u64,
    pub q: u64,
    pub r_max: u64,
    pub rows: Vec<RecursiveBoundReport>,
    pub findings: Vec<Finding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: VerifyReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub r: u64,
    pub method: String,
    pub degree: u64,
    pub seconds: f64,
    pub coeffs_per_sec: f64,
    /// Longest coefficient vector held; 0 for the stream.
    pub peak_len: usize,
    pub memory: String,
    pub spot_check: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchDoc {
    pub schema_version: u32,
    pub rows: Vec<BenchRow>,
}

pub(crate) fn join<T: ToString>(values: impl IntoIterator<Item = T>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
pub(crate) struct AnalyzeRow {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub degree: i64,
    pub a_plus: i64,
    pub a_minus: i64,
    pub height: i64,
    pub coeff_set: String,
    pub flat: bool,
}

#[derive(Serialize)]
pub(crate) struct ResidueRow {
    pub p: u64,
    pub q: u64,
    pub residue: u64,
    pub members: usize,
    pub r_values: String,
    pub coeff_set: String,
    pub verdict: Verdict,
    pub mirror_residue: u64,
    pub mirror_verdict: Verdict,
}

#[derive(Serialize)]
pub(crate) struct FlatRow {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub residue: u64,
    pub pm1: bool,
}

#[derive(Serialize)]
pub(crate) struct BoundsRow {
    pub p: u64,
    pub q: u64,
    pub s: u64,
    pub a_s: i64,
    pub r_up: u64,
    pub a_up: i64,
    pub r_down: Option<u64>,
    pub a_down: Option<i64>,
    pub within_bounds: bool,
    pub recursive_regime: bool,
}

#[derive(Serialize)]
pub(crate) struct CheckRow {
    pub check: String,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
}
