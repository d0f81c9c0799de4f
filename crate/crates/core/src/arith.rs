//! Small integer helpers: gcd, modular inverses, trial-division factoring.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, reduced into `[0, m)`. `None` when `gcd(a, m) != 1`.
///
/// For `m == 1` every residue is `0`, which is returned.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (i128::from(a).rem_euclid(i128::from(m)), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as i64)
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut divs = vec![1u64];
    for (prime, exp) in factorize(n) {
        let len = divs.len();
        let mut pow = 1u64;
        for _ in 0..exp {
            pow *= prime;
            for i in 0..len {
                divs.push(divs[i] * pow);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (prime, _)| acc / prime * (prime - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_matches_brute_force() {
        for m in 1..60i64 {
            for a in -70..70i64 {
                let brute = (0..m).find(|&x| (a * x).rem_euclid(m) == 1 % m);
                let expected = if gcd(a.unsigned_abs(), m as u64) == 1 { brute } else { None };
                assert_eq!(mod_inverse(a, m), expected, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn factoring_and_divisors() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(100001), vec![(11, 1), (9091, 1)]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(13), vec![1, 13]);
        assert_eq!(totient(36), 12);
        assert_eq!(totient(105), 48);
        assert_eq!(totient(1), 1);
    }
}
