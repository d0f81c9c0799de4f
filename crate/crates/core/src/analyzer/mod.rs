//! Batch verification and exploration over many parameter sets.
//!
//! Results fall into two classes. Hard checks ([`FailureRecord`]) cover facts
//! that are proven and must hold exactly. Findings ([`Finding`]) cover
//! statements whose proof is not available here (the recursive height bound and
//! its corollary) and open searches. A finding never fails a run.

mod bounds;
mod mesh;
pub mod properties;
mod residue;
mod verify;

use serde::{Deserialize, Serialize};

pub use bounds::{
    check_3f, check_recursive_bound, height_with_conventions, search_pq_plus_4, Check3F,
    PqPlus4Row, PqPlus4Search, RecursiveBoundReport,
};
pub use mesh::{cross_method_suite, parameter_sets, ternary_mesh, MeshReport};
pub use residue::{
    admissible_r, default_r_max, scan_flat, verify_residue_classes, ClassMember, FlatScan,
    ResidueClassReport,
};
pub use verify::{bound_findings, run_verify, CheckOutcome, VerifyConfig, VerifyReport};

use crate::arith::gcd;
use crate::error::{Error, Result};

/// Pairs used by the residue-class, flatness and bound scans unless configured otherwise.
pub const REFERENCE_PAIRS: [(u64, u64); 5] = [(3, 5), (3, 7), (4, 5), (5, 7), (3, 11)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// One violated hard check, with enough context to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub check: String,
    pub params: Vec<u64>,
    pub index: Option<i64>,
    pub expected: Option<i64>,
    pub actual: Option<i64>,
    pub detail: String,
}

impl FailureRecord {
    pub fn new(check: &str, params: &[u64], detail: impl Into<String>) -> Self {
        FailureRecord {
            check: check.to_string(),
            params: params.to_vec(),
            index: None,
            expected: None,
            actual: None,
            detail: detail.into(),
        }
    }

    pub fn at(mut self, index: i64, expected: i64, actual: i64) -> Self {
        self.index = Some(index);
        self.expected = Some(expected);
        self.actual = Some(actual);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    High,
}

/// An observation that is reported but never fails a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    pub topic: String,
    pub params: Vec<u64>,
    pub detail: String,
}

impl Finding {
    pub fn new(severity: Severity, topic: &str, params: &[u64], detail: impl Into<String>) -> Self {
        Finding {
            severity,
            topic: topic.to_string(),
            params: params.to_vec(),
            detail: detail.into(),
        }
    }
}

/// `p, q >= 3` and coprime.
pub(crate) fn check_pq(p: u64, q: u64) -> Result<()> {
    for v in [p, q] {
        if v < 3 {
            return Err(Error::ParameterTooSmall { value: v, min: 3 });
        }
    }
    let g = gcd(p, q);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: p.min(q),
            b: p.max(q),
            gcd: g,
        });
    }
    Ok(())
}
