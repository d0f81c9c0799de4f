use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_pq, Verdict};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::ternary::{CoeffSummary, TernaryContext};

/// `3pq + max(p, q)`: at least three members in every coprime class.
pub fn default_r_max(p: u64, q: u64) -> u64 {
    p.saturating_mul(q).saturating_mul(3).saturating_add(p.max(q))
}

/// Every `r` with `max(p, q) < r <= r_max` and `gcd(r, pq) = 1`.
pub fn admissible_r(p: u64, q: u64, r_max: u64) -> Vec<u64> {
    let pq = p * q;
    (p.max(q) + 1..=r_max).filter(|&r| gcd(r, pq) == 1).collect()
}

fn check_scan_args(p: u64, q: u64, r_max: u64) -> Result<()> {
    check_pq(p, q)?;
    if r_max <= p.max(q) {
        return Err(Error::OutOfRange {
            what: "r_max",
            value: r_max as i64,
            range: format!("({}, inf)", p.max(q)),
        });
    }
    Ok(())
}

fn summaries(p: u64, q: u64, r_max: u64) -> Result<Vec<(u64, CoeffSummary)>> {
    admissible_r(p, q, r_max)
        .into_par_iter()
        .map(|r| Ok((r, TernaryContext::sorted(p, q, r)?.summary()?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMember {
    pub r: u64,
    pub summary: CoeffSummary,
}

/// All admissible `r` in one residue class modulo `pq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassReport {
    pub p: u64,
    pub q: u64,
    pub residue: u64,
    pub members: Vec<ClassMember>,
    /// Every member has the same coefficient set.
    pub verdict: Verdict,
    /// `pq - residue`
    pub negation_partner: u64,
    /// This class's set is the negation of the partner's (vacuous if either is empty).
    pub mirror_verdict: Verdict,
}

impl ResidueClassReport {
    pub fn coeff_set(&self) -> Option<&[i64]> {
        self.members.first().map(|m| m.summary.coeff_set.as_slice())
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed() && self.mirror_verdict.passed()
    }
}

/// Groups `r` in `(max(p,q), r_max]` by residue modulo `pq` and checks that the
/// coefficient set is constant on each class and negated on the mirror class.
///
/// Reports come back in ascending residue order regardless of thread count.
pub fn verify_residue_classes(p: u64, q: u64, r_max: u64) -> Result<Vec<ResidueClassReport>> {
    check_scan_args(p, q, r_max)?;
    let pq = p * q;
    let all = summaries(p, q, r_max)?;
    let class_of = |c: u64| -> Vec<ClassMember> {
        all.iter()
            .filter(|(r, _)| r % pq == c)
            .map(|(r, s)| ClassMember {
                r: *r,
                summary: s.clone(),
            })
            .collect()
    };
    let mut reports = Vec::new();
    for residue in (1..pq).filter(|&c| gcd(c, pq) == 1) {
        let members = class_of(residue);
        let uniform = members
            .windows(2)
            .all(|w| w[0].summary.coeff_set == w[1].summary.coeff_set);
        let partner = pq - residue;
        let mirror = match (members.first(), class_of(partner).first()) {
            (Some(a), Some(b)) => a.summary.coeff_set == b.summary.negated_set(),
            _ => true,
        };
        reports.push(ResidueClassReport {
            p,
            q,
            residue,
            members,
            verdict: Verdict::from_bool(uniform),
            negation_partner: partner,
            mirror_verdict: Verdict::from_bool(mirror),
        });
    }
    Ok(reports)
}

/// Flat `r` values and their relation to the classes `r ≡ ±1 (mod pq)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatScan {
    pub p: u64,
    pub q: u64,
    pub r_max: u64,
    /// Admissible `r <= r_max` with height 1, ascending.
    pub flat: Vec<u64>,
    /// Members of the ±1 classes that are not flat; must be empty.
    pub missing_pm1: Vec<u64>,
    /// Flat `r` outside the ±1 classes.
    pub beyond_pm1: Vec<u64>,
}

impl FlatScan {
    pub fn holds(&self) -> bool {
        self.missing_pm1.is_empty()
    }
}

pub fn scan_flat(p: u64, q: u64, r_max: u64) -> Result<FlatScan> {
    check_scan_args(p, q, r_max)?;
    let pq = p * q;
    let pm1 = |r: u64| r % pq == 1 || r % pq == pq - 1;
    let all = summaries(p, q, r_max)?;
    let flat: Vec<u64> = all.iter().filter(|(_, s)| s.is_flat).map(|(r, _)| *r).collect();
    Ok(FlatScan {
        p,
        q,
        r_max,
        missing_pm1: all
            .iter()
            .filter(|(r, s)| pm1(*r) && !s.is_flat)
            .map(|(r, _)| *r)
            .collect(),
        beyond_pm1: flat.iter().copied().filter(|&r| !pm1(r)).collect(),
        flat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_mod_fifteen() {
        let reports = verify_residue_classes(3, 5, 52).unwrap();
        assert_eq!(reports.len(), 8);
        assert!(reports.iter().all(|r| r.passed()));
        let seven = reports.iter().find(|r| r.residue == 7).unwrap();
        let rs: Vec<u64> = seven.members.iter().map(|m| m.r).collect();
        assert_eq!(rs, vec![7, 22, 37, 52]);
        assert_eq!(seven.coeff_set(), Some(&[-2, -1, 0, 1][..]));
        let eight = reports.iter().find(|r| r.residue == 8).unwrap();
        assert_eq!(eight.coeff_set(), Some(&[-1, 0, 1, 2][..]));
        let one = reports.iter().find(|r| r.residue == 1).unwrap();
        assert!(one.members.iter().all(|m| m.summary.is_flat));
    }

    #[test]
    fn flat_scan() {
        let scan = scan_flat(3, 5, 100).unwrap();
        for r in [16, 29, 31, 44, 46] {
            assert!(scan.flat.contains(&r), "{r}");
        }
        assert!(!scan.flat.contains(&7));
        assert!(scan.holds());
    }

    #[test]
    fn argument_errors() {
        assert!(verify_residue_classes(3, 6, 50).is_err());
        assert!(scan_flat(3, 5, 5).is_err());
        assert!(scan_flat(2, 5, 50).is_err());
    }
}
