//! Ternary inclusion-exclusion polynomials `Q_{p,q,r}` without ever holding
//! the coefficient vector.
//!
//! Every integer `n` has a unique decomposition
//! `n = x*qr + y*rp + z*pq + delta*pqr` with `0 <= x < p`, `0 <= y < q`,
//! `0 <= z < r`. Below `pqr`, `n` is a nonnegative combination of `qr`, `rp`,
//! `pq` exactly when `delta = 0`; call that indicator `chi`. Reading the product
//! form of `Q` modulo `z^pqr` gives, for every `m < pqr`,
//!
//! ```text
//! a_m = sum over m-p < n <= m of ( chi(n) - chi(n-q) - chi(n-r) + chi(n-q-r) )
//! ```
//!
//! and consecutive coefficients differ by two second differences of `chi`,
//! which is what [`TernaryContext::stream`] iterates.
//!
//! The labeling of the three parameters is free: any of the six orderings gives
//! the same polynomial. The window length is the first parameter, so
//! [`TernaryContext::sorted`] (smallest first) is the cheap choice.

mod stream;

pub use stream::{CoeffStream, CoeffSummary, CoefficientSink, FnSink, NullSink};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};
use crate::iep::{representable, validate, Rho};

/// Largest admissible `pqr`; leaves headroom for shifted arguments in `i64`.
pub const MAX_PQR: i64 = 1 << 60;

/// Largest admissible single parameter, so pairwise products fit in `i64`.
pub const MAX_PARAM: u64 = 1 << 31;

/// A ternary parameter triple with the modular inverses needed for O(1) `chi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryContext {
    p: i64,
    q: i64,
    r: i64,
    pq: i64,
    qr: i64,
    rp: i64,
    pqr: i64,
    /// `r^-1 mod pq`
    r_star: i64,
    /// `(qr)^-1 mod p`
    inv_qr: i64,
    /// `(rp)^-1 mod q`
    inv_rp: i64,
    /// `(pq)^-1 mod r`
    inv_pq: i64,
}

/// The digits `(x, y, z, delta)` of `n = x*qr + y*rp + z*pq + delta*pqr`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub delta: i64,
}

impl TernaryContext {
    /// Uses the labeling as given; `p` is the window length of the coefficient sum.
    pub fn new(p: u64, q: u64, r: u64) -> Result<Self> {
        for v in [p, q, r] {
            if v < 3 {
                return Err(Error::ParameterTooSmall { value: v, min: 3 });
            }
        }
        for (a, b) in [(p, q), (q, r), (p, r)] {
            let g = gcd(a, b);
            if g != 1 {
                let (a, b) = (a.min(b), a.max(b));
                return Err(Error::NotCoprime { a, b, gcd: g });
            }
        }
        let pqr = (p as u128) * (q as u128) * (r as u128);
        if [p, q, r].iter().any(|&v| v >= MAX_PARAM) || pqr >= MAX_PQR as u128 {
            return Err(Error::Overflow("pqr"));
        }
        let (p, q, r) = (p as i64, q as i64, r as i64);
        let (pq, qr, rp) = (p * q, q * r, r * p);
        let inv = |a: i64, m: i64| mod_inverse(a, m).expect("pairwise coprime");
        Ok(TernaryContext {
            p,
            q,
            r,
            pq,
            qr,
            rp,
            pqr: pq * r,
            r_star: inv(r, pq),
            inv_qr: inv(qr, p),
            inv_rp: inv(rp, q),
            inv_pq: inv(pq, r),
        })
    }

    /// Relabels so that `p < q < r`.
    pub fn sorted(a: u64, b: u64, c: u64) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        Self::new(v[0], v[1], v[2])
    }

    pub fn from_rho(rho: &Rho) -> Result<Self> {
        match *rho.params() {
            [a, b, c] => Self::sorted(a, b, c),
            _ => Err(Error::InvalidArgument(format!(
                "ternary engine needs exactly three parameters, got {}",
                rho.len()
            ))),
        }
    }

    pub fn to_rho(&self) -> Rho {
        validate(&[self.p as u64, self.q as u64, self.r as u64]).expect("validated at construction")
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn r(&self) -> i64 {
        self.r
    }
    pub fn pq(&self) -> i64 {
        self.pq
    }
    pub fn qr(&self) -> i64 {
        self.qr
    }
    pub fn rp(&self) -> i64 {
        self.rp
    }
    pub fn pqr(&self) -> i64 {
        self.pqr
    }
    /// Inverse of `r` modulo `pq`.
    pub fn r_star(&self) -> i64 {
        self.r_star
    }

    /// `(p-1)(q-1)(r-1)`.
    pub fn degree(&self) -> i64 {
        (self.p - 1) * (self.q - 1) * (self.r - 1)
    }

    pub fn decompose(&self, n: i64) -> Decomposition {
        let x = (n.rem_euclid(self.p) * self.inv_qr) % self.p;
        let y = (n.rem_euclid(self.q) * self.inv_rp) % self.q;
        let z = ((n.rem_euclid(self.r) as i128 * self.inv_pq as i128) % self.r as i128) as i64;
        let rest = n as i128 - (x * self.qr) as i128 - (y * self.rp) as i128 - (z * self.pq) as i128;
        debug_assert_eq!(rest % self.pqr as i128, 0);
        Decomposition {
            x,
            y,
            z,
            delta: (rest / self.pqr as i128) as i64,
        }
    }

    fn check_below_pqr(&self, n: i64) -> Result<()> {
        if n >= self.pqr {
            return Err(Error::OutOfRange {
                what: "chi argument",
                value: n,
                range: format!("(-inf, {})", self.pqr),
            });
        }
        Ok(())
    }

    /// Whether `n` is a nonnegative combination of `qr`, `rp`, `pq`; `n < pqr` required.
    pub fn chi(&self, n: i64) -> Result<u8> {
        self.check_below_pqr(n)?;
        let via_delta = self.chi_unchecked(n);
        debug_assert_eq!(via_delta, self.f(n) <= n.div_euclid(self.r) && n >= 0);
        Ok(u8::from(via_delta))
    }

    /// The same indicator through `f(n) <= floor(n / r)`.
    pub fn chi_via_f(&self, n: i64) -> Result<u8> {
        self.check_below_pqr(n)?;
        Ok(u8::from(n >= 0 && self.f_via_residue(n) <= n / self.r))
    }

    /// `chi` without the range check. For `0 <= n < pqr`, `delta_n = 0` iff
    /// `x_n*qr + y_n*rp <= n`.
    #[inline]
    pub(crate) fn chi_unchecked(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let x = (n % self.p) * self.inv_qr % self.p;
        let y = (n % self.q) * self.inv_rp % self.q;
        x * self.qr + y * self.rp <= n
    }

    /// `x_n*q + y_n*p` from the digits.
    pub fn f(&self, n: i64) -> i64 {
        let d = self.decompose(n);
        let value = d.x * self.q + d.y * self.p;
        debug_assert_eq!(value, self.f_via_residue(n));
        value
    }

    /// `[n r*]_pq`, plus `pq` when that residue is not a combination of `p` and `q`.
    pub fn f_via_residue(&self, n: i64) -> i64 {
        let t = ((n.rem_euclid(self.pq) as i128 * self.r_star as i128) % self.pq as i128) as i64;
        if representable(t as u64, self.p as u64, self.q as u64).expect("coprime pair") {
            t
        } else {
            t + self.pq
        }
    }

    /// `chi(n) - chi(n-u) - chi(n-v) + chi(n-u-v)` for `u, v` in `±{p, q, r}`, `|u| != |v|`.
    pub fn psi(&self, n: i64, u: i64, v: i64) -> Result<i8> {
        let allowed = [self.p, self.q, self.r];
        if !allowed.contains(&u.abs()) || !allowed.contains(&v.abs()) || u.abs() == v.abs() {
            return Err(Error::InvalidArgument(format!(
                "shift pair ({u}, {v}) must come from ±{{{}, {}, {}}} with distinct magnitudes",
                self.p, self.q, self.r
            )));
        }
        let args = [n, n - u, n - v, n - u - v];
        for &a in &args {
            self.check_below_pqr(a)?;
        }
        let c = args.map(|a| i8::from(self.chi_unchecked(a)));
        let value = c[0] - c[1] - c[2] + c[3];
        debug_assert!(value.abs() <= 1, "second difference out of range at n={n}, u={u}, v={v}");
        Ok(value)
    }

    /// Coefficient of `z^m` by the windowed sum; zero for `m < 0` and for
    /// `degree < m < pqr`.
    pub fn coeff_at(&self, m: i64) -> Result<i64> {
        if m >= self.pqr {
            return Err(Error::OutOfRange {
                what: "coefficient index",
                value: m,
                range: format!("(-inf, {})", self.pqr),
            });
        }
        let (q, r) = (self.q, self.r);
        let chi = |n: i64| i64::from(self.chi_unchecked(n));
        Ok((m - self.p + 1..=m)
            .map(|n| chi(n) - chi(n - q) - chi(n - r) + chi(n - q - r))
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, q: u64, r: u64) -> TernaryContext {
        TernaryContext::new(p, q, r).unwrap()
    }

    #[test]
    fn construction() {
        let c = ctx(3, 5, 7);
        assert_eq!((c.pq(), c.qr(), c.rp(), c.pqr()), (15, 35, 21, 105));
        assert_eq!(c.r_star() * 7 % 15, 1);
        assert_eq!(c.degree(), 48);
        assert_eq!(
            TernaryContext::new(3, 5, 9),
            Err(Error::NotCoprime { a: 3, b: 9, gcd: 3 })
        );
        assert_eq!(
            TernaryContext::new(2, 5, 7),
            Err(Error::ParameterTooSmall { value: 2, min: 3 })
        );
        let s = TernaryContext::sorted(7, 3, 5).unwrap();
        assert_eq!((s.p(), s.q(), s.r()), (3, 5, 7));
    }

    #[test]
    fn decomposition_examples() {
        let c = ctx(3, 5, 7);
        assert_eq!(c.decompose(0), Decomposition { x: 0, y: 0, z: 0, delta: 0 });
        assert_eq!(c.decompose(1), Decomposition { x: 2, y: 1, z: 1, delta: -1 });
        assert_eq!(c.decompose(71), Decomposition { x: 1, y: 1, z: 1, delta: 0 });
        assert_eq!(c.decompose(-1).delta, -2);
    }

    #[test]
    fn chi_examples() {
        let c = ctx(3, 5, 7);
        assert_eq!(c.chi(0), Ok(1));
        assert_eq!(c.chi(1), Ok(0));
        assert_eq!(c.chi(71), Ok(1));
        assert_eq!(c.chi(-4), Ok(0));
        assert!(c.chi(105).is_err());
        for n in -20..105 {
            assert_eq!(c.chi(n), c.chi_via_f(n), "n={n}");
        }
    }

    #[test]
    fn f_examples() {
        let c = ctx(3, 5, 7);
        assert_eq!(c.f(0), 0);
        assert_eq!(c.f(1), 13);
        assert_eq!(c.f_via_residue(1), 13);
        assert_eq!(c.f(105), 0);
        assert_eq!(c.f(-210), 0);
    }

    #[test]
    fn psi_examples() {
        let c = ctx(3, 5, 7);
        assert_eq!(c.psi(0, 5, 7), Ok(1));
        assert!(c.psi(0, 5, -5).is_err());
        assert!(c.psi(0, 4, 7).is_err());
        assert!(c.psi(100, -5, 7).is_err());
        for n in -20..90 {
            for (u, v) in [(5, 7), (3, -7), (-3, 5)] {
                let a = c.psi(n, u, v).unwrap();
                assert_eq!(a, c.psi(n - u - v, -u, -v).unwrap());
            }
        }
    }

    #[test]
    fn windowed_coefficients() {
        let c = ctx(3, 5, 7);
        assert_eq!(c.coeff_at(0), Ok(1));
        assert_eq!(c.coeff_at(5), Ok(-1));
        assert_eq!(c.coeff_at(7), Ok(-2));
        assert_eq!(c.coeff_at(-3), Ok(0));
        assert_eq!(c.coeff_at(60), Ok(0));
        assert!(c.coeff_at(105).is_err());
    }
}
