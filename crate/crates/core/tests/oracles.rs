//! Library output against independent reference computations and frozen values.
//!
//! The reference construction expands every binomial factor by plain
//! convolution and finishes with schoolbook long division. The frozen vectors
//! below were produced by the same naive method in a separate script.

use iepoly::analyzer::parameter_sets;
use iepoly::arith::{gcd, totient};
use iepoly::{
    compute, divisor_set, order2_coefficient, representable, validate, CoeffSummary, Method,
    TernaryContext, DEFAULT_DEGREE_CAP,
};

fn convolve(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn long_divide(mut num: Vec<i128>, den: &[i128]) -> Vec<i128> {
    let lead = *den.last().unwrap();
    let mut quot = vec![0; num.len() - den.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = num[i + den.len() - 1] / lead;
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            num[i + j] -= c * d;
        }
    }
    assert!(num.iter().all(|&v| v == 0), "inexact division");
    quot
}

fn reference(params: &[u64]) -> Vec<i64> {
    let n0: u64 = params.iter().product();
    let (mut num, mut den) = (vec![1i128], vec![1i128]);
    for mask in 0u32..(1 << params.len()) {
        let sub: u64 = (0..params.len()).filter(|&i| mask >> i & 1 == 1).map(|i| params[i]).product();
        let e = (n0 / sub) as usize;
        let mut factor = vec![0i128; e + 1];
        factor[0] = 1;
        factor[e] = -1;
        if mask.count_ones() % 2 == 0 {
            num = convolve(&num, &factor);
        } else {
            den = convolve(&den, &factor);
        }
    }
    long_divide(num, &den).into_iter().map(|v| v as i64).collect()
}

const PHI_15: [i64; 9] = [1, -1, 0, 1, -1, 1, 0, -1, 1];
const Q_3_5_7: [i64; 49] = [
    1, 1, 1, 0, 0, -1, -1, -2, -1, -1, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, -1, 0, -1, 0, -1, 0, -1, 0,
    -1, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, -1, -1, -2, -1, -1, 0, 0, 1, 1, 1,
];
const Q_4_9: [i64; 25] = [
    1, -1, 0, 0, 1, -1, 0, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1, 0, 0, -1, 1, 0, 0, -1, 1,
];
const Q_2_3_5: [i64; 9] = [1, 1, 0, -1, -1, -1, 0, 1, 1];
const Q_3_4_5: [i64; 25] = [
    1, 1, 1, 0, -1, -2, -2, -1, 0, 1, 1, 1, 1, 1, 1, 1, 0, -1, -2, -2, -1, 0, 1, 1, 1,
];

#[test]
fn frozen_vectors() {
    let cases: [(&[u64], &[i64]); 5] = [
        (&[3, 5], &PHI_15),
        (&[3, 5, 7], &Q_3_5_7),
        (&[4, 9], &Q_4_9),
        (&[2, 3, 5], &Q_2_3_5),
        (&[3, 4, 5], &Q_3_4_5),
    ];
    for (params, expected) in cases {
        assert_eq!(reference(params), expected, "{params:?}");
        let rho = validate(params).unwrap();
        for method in Method::ALL {
            assert_eq!(compute(&rho, method, DEFAULT_DEGREE_CAP).unwrap().coeffs(), expected, "{params:?} {method:?}");
        }
    }
    assert_eq!(TernaryContext::new(3, 5, 7).unwrap().coefficients().unwrap(), Q_3_5_7);
    assert_eq!(TernaryContext::new(3, 4, 5).unwrap().coefficients().unwrap(), Q_3_4_5);
}

#[test]
fn frozen_summaries() {
    let s = |p, q, r| TernaryContext::new(p, q, r).unwrap().summary().unwrap();
    let a = s(3, 5, 7);
    assert_eq!((a.a_plus, a.a_minus, a.height, a.degree), (1, -2, 2, 48));
    let b = s(3, 5, 8);
    assert_eq!(b.coeff_set, vec![-1, 0, 1, 2]);
    assert_eq!(b.coeff_set, a.negated_set());
    assert!(s(3, 5, 16).is_flat);
    assert!(s(3, 5, 31).is_flat);
    let c = s(5, 7, 11);
    assert_eq!((c.a_plus, c.a_minus, c.degree), (2, -3, 240));
}

#[test]
fn all_methods_match_reference() {
    for size in 1..=4 {
        for params in parameter_sets(1200, size) {
            let expected = reference(&params);
            let rho = validate(&params).unwrap();
            for method in Method::ALL {
                let got = compute(&rho, method, DEFAULT_DEGREE_CAP).unwrap();
                assert_eq!(got.coeffs(), expected.as_slice(), "{params:?} {method:?}");
            }
        }
    }
}

#[test]
fn divisor_set_by_brute_force() {
    for params in parameter_sets(3000, 3).into_iter().chain(parameter_sets(500, 2)) {
        let n0: u64 = params.iter().product();
        let brute: Vec<u64> = (1..=n0)
            .filter(|d| n0 % d == 0 && params.iter().all(|&r| gcd(*d, r) > 1))
            .collect();
        let ds = divisor_set(&validate(&params).unwrap());
        assert_eq!(ds.divisors, brute, "{params:?}");
        let phi: u64 = params.iter().map(|r| r - 1).product();
        assert_eq!(brute.iter().map(|&d| totient(d)).sum::<u64>(), phi);
    }
}

fn brute_chi(n: i64, p: i64, q: i64, r: i64) -> u8 {
    if n < 0 {
        return 0;
    }
    let (qr, rp, pq) = (q * r, r * p, p * q);
    for i in 0..=n / qr {
        for j in 0..=(n - i * qr) / rp {
            if (n - i * qr - j * rp) % pq == 0 {
                return 1;
            }
        }
    }
    0
}

#[test]
fn chi_and_decomposition_by_brute_force() {
    for (p, q, r) in [(3, 5, 7), (3, 4, 5), (5, 3, 7), (4, 7, 9), (7, 5, 3)] {
        let ctx = TernaryContext::new(p, q, r).unwrap();
        let (p, q, r) = (p as i64, q as i64, r as i64);
        let pqr = p * q * r;
        for n in -20..pqr {
            assert_eq!(ctx.chi(n).unwrap(), brute_chi(n, p, q, r), "({p},{q},{r}) n={n}");
            assert_eq!(ctx.chi_via_f(n).unwrap(), brute_chi(n, p, q, r));
        }
        assert!(ctx.chi(pqr).is_err());
        for n in -pqr..2 * pqr {
            let mut found = Vec::new();
            for x in 0..p {
                for y in 0..q {
                    for z in 0..r {
                        let rest = n - x * q * r - y * r * p - z * p * q;
                        if rest % pqr == 0 {
                            found.push((x, y, z, rest / pqr));
                        }
                    }
                }
            }
            assert_eq!(found.len(), 1);
            let d = ctx.decompose(n);
            assert_eq!((d.x, d.y, d.z, d.delta), found[0]);
        }
    }
}

#[test]
fn spec_examples_for_digits() {
    let ctx = TernaryContext::new(3, 5, 7).unwrap();
    let d = ctx.decompose(1);
    assert_eq!((d.x, d.y, d.z, d.delta), (2, 1, 1, -1));
    let d = ctx.decompose(71);
    assert_eq!((d.x, d.y, d.z, d.delta), (1, 1, 1, 0));
    assert_eq!(ctx.f(1), 13);
    assert_eq!(ctx.f(0), 0);
    assert_eq!(ctx.f(210), 0);
    assert_eq!(ctx.psi(0, 5, 7).unwrap(), 1);
    assert_eq!(ctx.coeff_at(5).unwrap(), -1);
    assert_eq!(ctx.coeff_at(7).unwrap(), -2);
    assert_eq!(ctx.coeff_at(-4).unwrap(), 0);
    assert_eq!(ctx.coeff_at(60).unwrap(), 0);
}

#[test]
fn semigroup_by_brute_force() {
    for (p, q) in [(3u64, 5u64), (2, 7), (4, 9), (5, 8), (7, 11)] {
        let brute = |n: u64| (0..=n / q).any(|x| (n - x * q) % p == 0);
        for n in 0..200 {
            assert_eq!(representable(n, p, q).unwrap(), brute(n), "{n} in <{p},{q}>");
        }
        let expected = reference(&[p, q]);
        for (n, &a) in expected.iter().enumerate() {
            let brute_coeff = i64::from(brute(n as u64)) - if n == 0 { 0 } else { i64::from(brute(n as u64 - 1)) };
            assert_eq!(brute_coeff, a);
            assert_eq!(order2_coefficient(n as u64, p, q).unwrap(), a);
        }
    }
    assert!(!representable(7, 3, 5).unwrap());
    assert!(representable(13, 3, 5).unwrap());
    assert_eq!(order2_coefficient(8, 3, 5).unwrap(), 1);
}

#[test]
fn summary_matches_reference_vector() {
    for (p, q, r) in [(3, 7, 11), (5, 7, 9), (3, 8, 13), (7, 9, 10)] {
        let expected = CoeffSummary::from_coeffs(&reference(&[p, q, r]));
        assert_eq!(TernaryContext::sorted(p, q, r).unwrap().summary().unwrap(), expected);
    }
}
