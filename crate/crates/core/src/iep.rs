//! Inclusion-exclusion polynomials for an arbitrary admissible parameter set.
//!
//! For pairwise coprime `r_1, ..., r_s > 1` with `n0 = r_1 * ... * r_s`, the
//! polynomial is the alternating quotient of binomials `z^e - 1` whose exponents
//! are the complementary products `n0 / prod(r_i : i in S)`. Subsets `S` of even
//! size go to the numerator, odd size to the denominator. Both sides carry
//! `2^(s-1)` factors, so the quotient is unchanged when every factor is written
//! as `1 - z^e` instead.
//!
//! Three constructions are provided and are required to agree bit for bit:
//! exact alternating multiply/divide ([`compute_division`]), truncated power
//! series ([`compute_series`]), and the product of cyclotomic polynomials over
//! the divisor set ([`compute_product`]).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, gcd, mod_inverse, totient};
use crate::error::{Error, Result};
use crate::polyarith::{
    divide_exact_one_minus_zn, mul_geometric_truncated, mul_one_minus_zn,
    mul_one_minus_zn_truncated, IntPoly,
};

/// Default ceiling on the number of coefficients a vector-mode computation may hold.
pub const DEFAULT_DEGREE_CAP: u64 = 10_000_000;

/// A validated parameter set: sorted, every element `> 1`, pairwise coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Rho {
    params: Vec<u64>,
    n0: u64,
}

impl TryFrom<Vec<u64>> for Rho {
    type Error = Error;

    fn try_from(params: Vec<u64>) -> Result<Self> {
        Rho::new(&params)
    }
}

impl From<Rho> for Vec<u64> {
    fn from(rho: Rho) -> Self {
        rho.params
    }
}

impl Rho {
    pub fn new(params: &[u64]) -> Result<Rho> {
        validate(params)
    }

    pub fn params(&self) -> &[u64] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Product of all parameters.
    pub fn n0(&self) -> u64 {
        self.n0
    }

    /// `n0` divided by the parameters selected by the bit mask.
    pub fn complementary(&self, mask: u32) -> u64 {
        self.params
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(self.n0, |acc, (_, &r)| acc / r)
    }

    /// Exponents of the `1 - z^e` factors: `(numerator, denominator)`.
    pub fn binomial_exponents(&self) -> (Vec<u64>, Vec<u64>) {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for mask in 0..(1u32 << self.len()) {
            let e = self.complementary(mask);
            if mask.count_ones() % 2 == 0 {
                num.push(e);
            } else {
                den.push(e);
            }
        }
        (num, den)
    }

    /// Order 3 with every parameter at least 3.
    pub fn is_ternary(&self) -> bool {
        self.len() == 3 && self.params.iter().all(|&r| r >= 3)
    }
}

/// Checks the hypotheses on a parameter list and returns the sorted set.
pub fn validate(params: &[u64]) -> Result<Rho> {
    if params.is_empty() {
        return Err(Error::EmptyParameterSet);
    }
    let mut sorted = params.to_vec();
    sorted.sort_unstable();
    if let Some(&r) = sorted.iter().find(|&&r| r <= 1) {
        return Err(Error::ParameterTooSmall { value: r, min: 2 });
    }
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let g = gcd(sorted[i], sorted[j]);
            if g != 1 {
                return Err(Error::NotCoprime {
                    a: sorted[i],
                    b: sorted[j],
                    gcd: g,
                });
            }
        }
    }
    let n0 = sorted
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r))
        .ok_or(Error::Overflow("product of parameters"))?;
    Ok(Rho { params: sorted, n0 })
}

/// Degree of the polynomial: the product of `r_i - 1`.
pub fn phi_degree(rho: &Rho) -> Result<u64> {
    rho.params
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r - 1))
        .ok_or(Error::Overflow("degree"))
}

/// `s` when `s = 1` or every parameter is at least 3, otherwise `s - 1`.
pub fn order_of(rho: &Rho) -> usize {
    let s = rho.len();
    if s == 1 || rho.params.iter().all(|&r| r >= 3) {
        s
    } else {
        s - 1
    }
}

/// Divisors `d` of `n0` sharing a factor with every parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSet {
    pub divisors: Vec<u64>,
}

/// Since the parameters are coprime, each such `d` factors uniquely as a product
/// of divisors `d_i > 1` of the individual `r_i`.
pub fn divisor_set(rho: &Rho) -> DivisorSet {
    let mut acc = vec![1u64];
    for &r in rho.params() {
        let parts: Vec<u64> = divisors(r).into_iter().filter(|&d| d > 1).collect();
        acc = acc
            .iter()
            .flat_map(|&a| parts.iter().map(move |&d| a * d))
            .collect();
    }
    acc.sort_unstable();
    DivisorSet { divisors: acc }
}

/// Which construction to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Division,
    Series,
    Product,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Division, Method::Series, Method::Product];

    pub fn name(self) -> &'static str {
        match self {
            Method::Division => "division",
            Method::Series => "series",
            Method::Product => "product",
        }
    }
}

/// Resource figures from one construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComputeStats {
    /// Largest coefficient vector held at any point.
    pub peak_len: usize,
}

pub fn compute(rho: &Rho, method: Method, cap: u64) -> Result<IntPoly> {
    compute_with_stats(rho, method, cap).map(|(poly, _)| poly)
}

pub fn compute_with_stats(rho: &Rho, method: Method, cap: u64) -> Result<(IntPoly, ComputeStats)> {
    match method {
        Method::Division => division_impl(rho, cap),
        Method::Series => series_impl(rho, cap),
        Method::Product => product_impl(rho, cap),
    }
}

/// Exact alternating multiply/divide over the binomial factors.
pub fn compute_division(rho: &Rho, cap: u64) -> Result<IntPoly> {
    compute(rho, Method::Division, cap)
}

/// Numerator binomials times geometric series, modulo `z^(degree + 1)`.
pub fn compute_series(rho: &Rho, cap: u64) -> Result<IntPoly> {
    compute(rho, Method::Series, cap)
}

/// Product of the cyclotomic polynomials indexed by [`divisor_set`].
pub fn compute_product(rho: &Rho, cap: u64) -> Result<IntPoly> {
    compute(rho, Method::Product, cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    /// multiply by `1 - z^e`
    Mul(usize),
    /// divide by `1 - z^e`
    Div(usize),
}

/// Orders the factors so that every division is exact and intermediates stay small.
///
/// `1 - z^e` is (up to sign) the product of `Phi_d` over `d | e`, so the running
/// quotient is a product of cyclotomic polynomials with multiplicities tracked in
/// `mult`. A denominator may be applied once every `Phi_d`, `d | e`, is present.
/// Numerators go largest first, each followed by every division that has become
/// exact.
fn schedule(mut num: Vec<u64>, mut den: Vec<u64>) -> Result<Vec<Step>> {
    num.sort_unstable_by(|a, b| b.cmp(a));
    den.sort_unstable_by(|a, b| b.cmp(a));
    let mut mult: HashMap<u64, i64> = HashMap::new();
    let mut den_divs: Vec<Option<(u64, Vec<u64>)>> =
        den.into_iter().map(|e| Some((e, divisors(e)))).collect();
    let mut steps = Vec::with_capacity(num.len() + den_divs.len());

    for e in num {
        for d in divisors(e) {
            *mult.entry(d).or_insert(0) += 1;
        }
        steps.push(Step::Mul(to_usize(e)?));
        loop {
            let mut progressed = false;
            for slot in den_divs.iter_mut() {
                let ready = slot
                    .as_ref()
                    .is_some_and(|(_, ds)| ds.iter().all(|d| mult.get(d).copied().unwrap_or(0) > 0));
                if ready {
                    let (e, ds) = slot.take().expect("slot checked above");
                    for d in ds {
                        *mult.get_mut(&d).expect("present") -= 1;
                    }
                    steps.push(Step::Div(to_usize(e)?));
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
    }
    if den_divs.iter().any(Option::is_some) {
        return Err(Error::Inconsistency(
            "denominator factors left over after all numerators were applied".into(),
        ));
    }
    Ok(steps)
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Overflow("exponent"))
}

fn check_cap(degree: u64, cap: u64) -> Result<()> {
    if degree.saturating_add(1) > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    Ok(())
}

/// Applies `steps` exactly to `poly`, enforcing the cap on every intermediate.
fn apply_exact(mut poly: IntPoly, steps: &[Step], cap: u64, stats: &mut ComputeStats) -> Result<IntPoly> {
    for &step in steps {
        poly = match step {
            Step::Mul(e) => {
                let len = poly.coeffs().len() as u64 + e as u64;
                if len > cap {
                    return Err(Error::DegreeCapExceeded { degree: len - 1, cap });
                }
                mul_one_minus_zn(poly, e)?
            }
            Step::Div(e) => divide_exact_one_minus_zn(poly, e)?,
        };
        stats.peak_len = stats.peak_len.max(poly.coeffs().len());
    }
    Ok(poly)
}

fn division_impl(rho: &Rho, cap: u64) -> Result<(IntPoly, ComputeStats)> {
    let degree = phi_degree(rho)?;
    check_cap(degree, cap)?;
    let (num, den) = rho.binomial_exponents();
    let steps = schedule(num, den)?;
    let mut stats = ComputeStats { peak_len: 1 };
    let poly = apply_exact(IntPoly::one(), &steps, cap, &mut stats)?;
    finish(poly, degree, stats)
}

fn series_impl(rho: &Rho, cap: u64) -> Result<(IntPoly, ComputeStats)> {
    let degree = phi_degree(rho)?;
    check_cap(degree, cap)?;
    let limit = to_usize(degree + 1)?;
    let (num, den) = rho.binomial_exponents();
    let steps = schedule(num, den)?;
    let mut poly = IntPoly::one();
    let mut stats = ComputeStats { peak_len: 1 };
    for step in steps {
        // factors with exponent >= limit are 1 modulo z^limit
        poly = match step {
            Step::Mul(e) if e < limit => mul_one_minus_zn_truncated(poly, e, limit)?,
            Step::Div(e) if e < limit => mul_geometric_truncated(poly, e, limit)?,
            _ => poly,
        };
        stats.peak_len = stats.peak_len.max(poly.coeffs().len());
    }
    finish(poly, degree, stats)
}

fn product_impl(rho: &Rho, cap: u64) -> Result<(IntPoly, ComputeStats)> {
    let degree = phi_degree(rho)?;
    check_cap(degree, cap)?;
    let primes: Vec<u64> = rho
        .params()
        .iter()
        .flat_map(|&r| factorize(r).into_iter().map(|(prime, _)| prime))
        .collect();
    let set = divisor_set(rho);
    if set.divisors.contains(&1) {
        return Err(Error::Inconsistency("divisor set contains 1".into()));
    }
    let mut poly = IntPoly::one();
    let mut stats = ComputeStats { peak_len: 1 };
    let mut total = 0u64;
    for &d in &set.divisors {
        // Phi_d(z) = Phi_rad(d)(z^(d / rad(d))), and for square-free rad(d) the
        // cyclotomic polynomial is the inclusion-exclusion polynomial of its primes.
        let support: Vec<u64> = primes.iter().copied().filter(|&q| d % q == 0).collect();
        let rad: u64 = support.iter().product();
        let stretch = d / rad;
        let (num, den) = validate(&support)?.binomial_exponents();
        let dilated = |v: Vec<u64>| -> Result<Vec<u64>> {
            v.into_iter()
                .map(|e| e.checked_mul(stretch).ok_or(Error::Overflow("dilated exponent")))
                .collect()
        };
        let steps = schedule(dilated(num)?, dilated(den)?)?;
        poly = apply_exact(poly, &steps, cap, &mut stats)?;
        total += totient(d);
    }
    if total != degree {
        return Err(Error::Inconsistency(format!(
            "cyclotomic degrees sum to {total}, expected {degree}"
        )));
    }
    finish(poly, degree, stats)
}

fn finish(poly: IntPoly, degree: u64, stats: ComputeStats) -> Result<(IntPoly, ComputeStats)> {
    if poly.degree().map(|d| d as u64) != Some(degree) {
        return Err(Error::Inconsistency(format!(
            "constructed polynomial has degree {:?}, expected {degree}",
            poly.degree()
        )));
    }
    Ok((poly, stats))
}

/// Checks `Q_{2 ∪ rho'}(z) = Q_{rho'}(-z)` by computing both sides.
pub fn negation_identity_check(rho_prime: &Rho, cap: u64) -> Result<bool> {
    if let Some(&r) = rho_prime.params().iter().find(|&&r| r % 2 == 0) {
        return Err(Error::InvalidArgument(format!(
            "negation identity needs odd parameters, got {r}"
        )));
    }
    let mut with_two = vec![2];
    with_two.extend_from_slice(rho_prime.params());
    let lhs = compute_division(&validate(&with_two)?, cap)?;
    let rhs = compute_division(rho_prime, cap)?.negate_argument()?;
    Ok(lhs == rhs)
}

fn check_pair(p: u64, q: u64) -> Result<()> {
    for v in [p, q] {
        if v < 2 {
            return Err(Error::ParameterTooSmall { value: v, min: 2 });
        }
    }
    let g = gcd(p, q);
    if g != 1 {
        return Err(Error::NotCoprime { a: p, b: q, gcd: g });
    }
    Ok(())
}

/// Membership of `n` in the semigroup `{x*q + y*p : x, y >= 0}`.
///
/// Takes the least `x` with `x*q ≡ n (mod p)` and checks that `x*q <= n`.
pub fn representable(n: u64, p: u64, q: u64) -> Result<bool> {
    check_pair(p, q)?;
    let q_inv = mod_inverse(q as i64, p as i64).expect("coprime") as u128;
    let x = (u128::from(n % p) * q_inv) % u128::from(p);
    Ok(x * u128::from(q) <= u128::from(n))
}

/// Coefficient `n` of `Q_{p,q}` from semigroup membership: `χ(n) - χ(n-1)`.
pub fn order2_coefficient(n: u64, p: u64, q: u64) -> Result<i64> {
    check_pair(p, q)?;
    let top = (p - 1) * (q - 1);
    if n > top {
        return Err(Error::OutOfRange {
            what: "coefficient index",
            value: n as i64,
            range: format!("[0, {top}]"),
        });
    }
    let here = i64::from(representable(n, p, q)?);
    let before = if n == 0 { 0 } else { i64::from(representable(n - 1, p, q)?) };
    Ok(here - before)
}
