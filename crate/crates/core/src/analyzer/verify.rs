use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{check_3f, check_recursive_bound, search_pq_plus_4};
use super::mesh::{cross_method_suite, ternary_mesh};
use super::properties::{
    check_decomposition, check_residue_transfer, check_triple_full, check_triple_streaming,
    first_mismatch, random_triples,
};
use super::residue::{default_r_max, scan_flat, verify_residue_classes};
use super::{FailureRecord, Finding, Severity, REFERENCE_PAIRS};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::iep::{compute_division, DEFAULT_DEGREE_CAP};
use crate::ternary::TernaryContext;

/// Scale and seed of [`run_verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Exhaustive mesh bound on `n0` (and on `pqr` for ternary properties).
    pub max_n0: u64,
    pub seed: u64,
    pub order4_samples: usize,
    pub pairs: Vec<(u64, u64)>,
    pub random_triples: usize,
    pub random_max_pqr: u64,
    pub psi_samples: usize,
    /// Corrupts one coefficient so the run must fail.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n0: 5000,
            seed: 0,
            order4_samples: 200,
            pairs: REFERENCE_PAIRS.to_vec(),
            random_triples: 20,
            random_max_pqr: 1_000_000,
            psi_samples: 10_000,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<FailureRecord>,
    pub passed: bool,
}

impl CheckOutcome {
    fn new(name: &str, cases: usize, mut failures: Vec<FailureRecord>) -> Self {
        failures.truncate(50);
        CheckOutcome {
            name: name.to_string(),
            cases,
            passed: failures.is_empty(),
            failures,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckOutcome>,
    pub findings: Vec<Finding>,
    pub passed: bool,
}

/// Runs every hard check at the configured scale and collects findings.
///
/// Output is a function of the configuration only; thread count does not
/// affect it.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    for &(p, q) in &config.pairs {
        super::check_pq(p, q)?;
    }
    let mut checks = Vec::new();
    let mut findings = Vec::new();

    let mesh = cross_method_suite(config.max_n0, config.seed, config.order4_samples)?;
    checks.push(CheckOutcome::new("method_equivalence", mesh.cases(), mesh.failures));

    let triples = ternary_mesh(config.max_n0);
    let per_triple: Vec<_> = triples
        .par_iter()
        .map(|&(p, q, r)| {
            let ctx = TernaryContext::new(p, q, r)?;
            let coeffs = compute_division(&ctx.to_rho(), DEFAULT_DEGREE_CAP)?.into_coeffs();
            Ok(check_triple_full(&ctx, &coeffs))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for report in per_triple {
        failures.extend(report.failures);
        findings.extend(report.findings);
    }
    checks.push(CheckOutcome::new("ternary_properties", triples.len(), failures));

    let small: Vec<_> = triples.iter().filter(|t| t.0 * t.1 * t.2 <= 2000).collect();
    let failures = small
        .par_iter()
        .map(|&&(p, q, r)| Ok(check_decomposition(&TernaryContext::new(p, q, r)?)))
        .collect::<Result<Vec<_>>>()?
        .concat();
    checks.push(CheckOutcome::new("decomposition", small.len(), failures));

    let large = random_triples(config.random_triples, config.max_n0.max(20_000), config.random_max_pqr, config.seed);
    let labeled: Vec<_> = small.iter().map(|&&t| t).chain(large.iter().copied()).collect();
    let failures = labeled
        .par_iter()
        .map(|&t| labeling_invariance(t))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    checks.push(CheckOutcome::new("labeling_invariance", labeled.len(), failures));

    let failures = large
        .par_iter()
        .enumerate()
        .map(|(i, &(p, q, r))| {
            let ctx = TernaryContext::new(p, q, r)?;
            check_triple_streaming(&ctx, config.psi_samples, config.seed.wrapping_add(i as u64))
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    checks.push(CheckOutcome::new("ternary_properties_large", large.len(), failures));

    let mut residue_failures = Vec::new();
    let mut flat_failures = Vec::new();
    let mut transfer_failures = Vec::new();
    let mut classes = 0;
    for &(p, q) in &config.pairs {
        for report in verify_residue_classes(p, q, default_r_max(p, q))? {
            classes += 1;
            if !report.passed() {
                residue_failures.push(FailureRecord::new(
                    "residue_class",
                    &[p, q, report.residue],
                    format!("uniform {:?}, mirror {:?}", report.verdict, report.mirror_verdict),
                ));
            }
        }
        let scan = scan_flat(p, q, 10 * p * q)?;
        for &r in &scan.missing_pm1 {
            flat_failures.push(FailureRecord::new("flat_pm1", &[p, q, r], "r = ±1 mod pq but not flat"));
        }
        if !scan.beyond_pm1.is_empty() {
            findings.push(Finding::new(
                Severity::Info,
                "flat_beyond_pm1",
                &[p, q],
                format!("{:?}", scan.beyond_pm1),
            ));
        }
        transfer_failures.extend(check_residue_transfer(p, q)?);
    }
    checks.push(CheckOutcome::new("residue_classes", classes, residue_failures));
    checks.push(CheckOutcome::new("flat_pm1", config.pairs.len(), flat_failures));
    checks.push(CheckOutcome::new("residue_transfer", config.pairs.len(), transfer_failures));

    findings.extend(bound_findings(&config.pairs)?);

    let odd_pairs: Vec<(u64, u64)> = (3..=29u64)
        .step_by(2)
        .flat_map(|p| (p + 2..=99).step_by(2).map(move |q| (p, q)))
        .filter(|&(p, q)| gcd(p, q) == 1 && p * q <= 300)
        .collect();
    let search = search_pq_plus_4(&odd_pairs)?;
    findings.push(Finding::new(
        Severity::Info,
        "pq_plus_4",
        &[],
        format!("{} pairs, max height {}, value-4 hits {:?}", search.rows.len(), search.max_height, search.hits),
    ));

    if config.inject_fault {
        checks.push(injected_fault()?);
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        config: config.clone(),
        checks,
        findings,
        passed,
    })
}

fn labeling_invariance((p, q, r): (u64, u64, u64)) -> Result<Option<FailureRecord>> {
    let base = TernaryContext::new(p, q, r)?.summary()?;
    for (a, b, c) in [(p, r, q), (q, p, r), (q, r, p), (r, p, q), (r, q, p)] {
        let other = TernaryContext::new(a, b, c)?.summary()?;
        if other != base {
            return Ok(Some(FailureRecord::new(
                "labeling_invariance",
                &[a, b, c],
                format!("{other:?} vs {base:?}"),
            )));
        }
    }
    Ok(None)
}

/// Recursive-bound and coarse-bound results for every valid `s`, as findings.
pub fn bound_findings(pairs: &[(u64, u64)]) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for &(p, q) in pairs {
        let pq = p * q;
        let big = p.max(q);
        for s in (1..big).filter(|&s| gcd(s, pq) == 1) {
            let report = check_recursive_bound(p, q, s)?;
            if !report.within_bounds() {
                out.push(Finding::new(
                    Severity::High,
                    "recursive_bound",
                    &[p, q, s],
                    format!(
                        "A(s)={}, A(pq+s)={}, A(pq-s)={:?}",
                        report.a_s, report.a_up, report.a_down
                    ),
                ));
            }
        }
        for s in (1..pq.saturating_sub(big)).filter(|&s| gcd(s, pq) == 1) {
            let check = check_3f(p, q, s)?;
            if !check.holds {
                out.push(Finding::new(
                    Severity::High,
                    "coarse_bound",
                    &[p, q, s],
                    format!("A(pq+s)={}, A(pq-s)={}", check.a_up, check.a_down),
                ));
            } else if check.sharp && s <= 3 {
                out.push(Finding::new(Severity::Info, "coarse_bound_sharp", &[p, q, s], "both heights equal s"));
            }
        }
    }
    Ok(out)
}

/// Compares the division vector of `{3, 5, 7}` with a stream copy whose
/// coefficient 7 has been altered.
fn injected_fault() -> Result<CheckOutcome> {
    let ctx = TernaryContext::new(3, 5, 7)?;
    let expected = compute_division(&ctx.to_rho(), DEFAULT_DEGREE_CAP)?.into_coeffs();
    let mut actual = ctx.coefficients()?;
    let slot = actual
        .get_mut(7)
        .ok_or_else(|| Error::Inconsistency("degree below 7".into()))?;
    *slot += 1;
    let failures = first_mismatch("injected_fault", &[3, 5, 7], &expected, &actual).into_iter().collect();
    Ok(CheckOutcome::new("injected_fault", 1, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            max_n0: 300,
            order4_samples: 5,
            pairs: vec![(3, 5), (4, 5)],
            random_triples: 2,
            random_max_pqr: 60_000,
            psi_samples: 500,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn quick_run_passes() {
        let report = run_verify(&quick()).unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert!(report.passed, "{failed:?}");
        assert!(!report.findings.iter().any(|f| f.severity == Severity::High), "{:?}", report.findings);
    }

    #[test]
    fn injected_fault_fails() {
        let report = run_verify(&VerifyConfig {
            inject_fault: true,
            ..quick()
        })
        .unwrap();
        assert!(!report.passed);
        let fault = report.checks.iter().find(|c| c.name == "injected_fault").unwrap();
        assert_eq!(fault.failures[0].index, Some(7));
    }
}
