use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::properties::first_mismatch;
use super::FailureRecord;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::iep::{
    compute, compute_division, order2_coefficient, order_of, phi_degree, validate, Method, Rho,
    DEFAULT_DEGREE_CAP,
};
use crate::polyarith::is_reciprocal;
use crate::ternary::TernaryContext;

/// Sorted pairwise-coprime sets of `size` integers `> 1` with product `<= max_n0`.
pub fn parameter_sets(max_n0: u64, size: usize) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, left: usize, max_n0: u64, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        let start = prefix.last().map_or(2, |&v| v + 1);
        let mut v = start;
        // the remaining `left` values are all >= v
        while (0..left).try_fold(product, |acc, i| acc.checked_mul(v + i as u64)).is_some_and(|p| p <= max_n0) {
            if prefix.iter().all(|&u| gcd(u, v) == 1) {
                prefix.push(v);
                extend(prefix, product * v, left - 1, max_n0, out);
                prefix.pop();
            }
            v += 1;
        }
    }
    let mut out = Vec::new();
    if size > 0 {
        extend(&mut Vec::new(), 1, size, max_n0, &mut out);
    }
    out
}

/// Triples `3 <= p < q < r`, pairwise coprime, `pqr <= max_pqr`.
pub fn ternary_mesh(max_pqr: u64) -> Vec<(u64, u64, u64)> {
    parameter_sets(max_pqr, 3)
        .into_iter()
        .filter(|v| v[0] >= 3)
        .map(|v| (v[0], v[1], v[2]))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshReport {
    pub max_n0: u64,
    /// Parameter sets checked, indexed by set size (index 0 unused).
    pub cases_by_size: Vec<usize>,
    pub failures: Vec<FailureRecord>,
}

impl MeshReport {
    pub fn cases(&self) -> usize {
        self.cases_by_size.iter().sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cross-checks every construction against every other.
///
/// Sets of size 1 to 3 with `n0 <= max_n0` are exhaustive; size 4 is sampled
/// (`order4_samples` sets, chosen by `seed`). Each set must give identical
/// output from division, series and product; ternary sets must also match the
/// stream. Reciprocity, degree, low-order flatness, the order-2 semigroup
/// formula and the `z -> -z` identity for sets containing 2 are checked along
/// the way.
pub fn cross_method_suite(max_n0: u64, seed: u64, order4_samples: usize) -> Result<MeshReport> {
    if max_n0 < 30 {
        return Err(Error::OutOfRange {
            what: "max_n0",
            value: max_n0 as i64,
            range: "[30, inf)".into(),
        });
    }
    let mut sets: Vec<Vec<u64>> = (1..=3).flat_map(|size| parameter_sets(max_n0, size)).collect();
    let mut quads = parameter_sets(max_n0, 4);
    if quads.len() > order4_samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        quads = quads.choose_multiple(&mut rng, order4_samples).cloned().collect();
        quads.sort();
    }
    sets.extend(quads);

    let mut cases_by_size = vec![0usize; 5];
    for s in &sets {
        cases_by_size[s.len()] += 1;
    }
    let mut failures: Vec<FailureRecord> = sets
        .par_iter()
        .flat_map_iter(|params| match validate(params) {
            Ok(rho) => check_rho(&rho),
            Err(e) => vec![FailureRecord::new("validate", params, e.to_string())],
        })
        .collect();
    failures.truncate(50);
    Ok(MeshReport {
        max_n0,
        cases_by_size,
        failures,
    })
}

fn check_rho(rho: &Rho) -> Vec<FailureRecord> {
    let params = rho.params();
    let mut out = Vec::new();
    let div = match compute_division(rho, DEFAULT_DEGREE_CAP) {
        Ok(poly) => poly,
        Err(e) => return vec![FailureRecord::new("division", params, e.to_string())],
    };
    let a = div.coeffs();
    for method in [Method::Series, Method::Product] {
        let check = format!("method_equivalence/{}", method.name());
        match compute(rho, method, DEFAULT_DEGREE_CAP) {
            Ok(poly) => out.extend(first_mismatch(&check, params, a, poly.coeffs())),
            Err(e) => out.push(FailureRecord::new(&check, params, e.to_string())),
        }
    }
    if phi_degree(rho).ok() != div.degree().map(|d| d as u64) {
        out.push(FailureRecord::new("degree", params, format!("degree {:?}", div.degree())));
    }
    if !is_reciprocal(&div) {
        out.push(FailureRecord::new("reciprocity", params, "a_m != a_{deg-m}"));
    }
    if order_of(rho) <= 2 {
        if let Some(m) = a.iter().position(|v| v.abs() > 1) {
            out.push(FailureRecord::new("low_order_flatness", params, "coefficient outside [-1, 1]").at(m as i64, 1, a[m]));
        }
    }
    if let [p, q] = *params {
        for (m, &am) in a.iter().enumerate() {
            match order2_coefficient(m as u64, p, q) {
                Ok(v) if v == am => {}
                Ok(v) => {
                    out.push(FailureRecord::new("order2_formula", params, "semigroup formula").at(m as i64, am, v));
                    break;
                }
                Err(e) => {
                    out.push(FailureRecord::new("order2_formula", params, e.to_string()));
                    break;
                }
            }
        }
    }
    if params[0] == 2 && params.len() >= 2 {
        let rest = validate(&params[1..]).and_then(|r| compute_division(&r, DEFAULT_DEGREE_CAP)).and_then(|p| p.negate_argument());
        match rest {
            Ok(neg) => out.extend(first_mismatch("negation_identity", params, a, neg.coeffs())),
            Err(e) => out.push(FailureRecord::new("negation_identity", params, e.to_string())),
        }
    }
    if rho.is_ternary() {
        match TernaryContext::from_rho(rho).and_then(|c| c.coefficients()) {
            Ok(stream) => out.extend(first_mismatch("method_equivalence/stream", params, a, &stream)),
            Err(e) => out.push(FailureRecord::new("method_equivalence/stream", params, e.to_string())),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_coprime_sets() {
        assert_eq!(parameter_sets(12, 2), vec![vec![2, 3], vec![2, 5], vec![3, 4]]);
        assert_eq!(parameter_sets(30, 3), vec![vec![2, 3, 5]]);
        assert_eq!(ternary_mesh(105), vec![(3, 4, 5), (3, 4, 7), (3, 5, 7)]);
        assert_eq!(parameter_sets(7, 1).len(), 6);
    }

    #[test]
    fn small_mesh_passes() {
        let report = cross_method_suite(400, 1, 10).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.cases_by_size[3] > 0);
        assert!(cross_method_suite(29, 1, 10).is_err());
    }
}
