//! Dense integer polynomials and the binomial-factor operations used to build
//! inclusion-exclusion polynomials.
//!
//! Every polynomial handled here is a product or quotient of factors of the
//! form `1 - z^n`, or a geometric series `1 + z^n + z^(2n) + ...`, so the module
//! only offers those operations. All of them work in place on the coefficient
//! vector in linear time, with checked `i64` arithmetic.
//!
//! Sign convention: the canonical binomial is `1 - z^n`. The division routine
//! is phrased in terms of `z^n - 1`; [`divide_exact_one_minus_zn`] is the
//! sign-normalized companion used by the constructors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer polynomial, `coeffs[m]` is the coefficient of `z^m`.
///
/// Canonical form has no trailing zero coefficients; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl From<Vec<i64>> for IntPoly {
    fn from(coeffs: Vec<i64>) -> Self {
        IntPoly::from_coeffs(coeffs)
    }
}

impl From<IntPoly> for Vec<i64> {
    fn from(poly: IntPoly) -> Self {
        poly.coeffs
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        let mut poly = IntPoly { coeffs };
        poly.canonicalize();
        poly
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^m`; zero outside the stored range.
    pub fn coeff(&self, m: usize) -> i64 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    /// Substitutes `z -> z^k`.
    pub fn dilate(&self, k: usize) -> Result<IntPoly> {
        if k == 0 {
            return Err(Error::InvalidArgument("dilation factor must be positive".into()));
        }
        let Some(deg) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        let len = deg
            .checked_mul(k)
            .and_then(|d| d.checked_add(1))
            .ok_or(Error::Overflow("dilation degree"))?;
        let mut coeffs = vec![0i64; len];
        for (m, &c) in self.coeffs.iter().enumerate() {
            coeffs[m * k] = c;
        }
        Ok(IntPoly { coeffs })
    }

    /// Substitutes `z -> -z`, negating odd-exponent coefficients.
    pub fn negate_argument(&self) -> Result<IntPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| {
                if m % 2 == 1 {
                    c.checked_neg().ok_or(Error::Overflow("coefficient negation"))
                } else {
                    Ok(c)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly { coeffs })
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.unsigned_abs();
            match (m, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "z")?,
                (1, _) => write!(f, "{mag}z")?,
                (_, 1) => write!(f, "z^{m}")?,
                _ => write!(f, "{mag}z^{m}")?,
            }
        }
        Ok(())
    }
}

fn check_exponent(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("binomial exponent must be positive".into()));
    }
    Ok(())
}

/// Multiplies by `1 - z^n`.
pub fn mul_one_minus_zn(poly: IntPoly, n: usize) -> Result<IntPoly> {
    check_exponent(n)?;
    if poly.is_zero() {
        return Ok(poly);
    }
    let mut c = poly.coeffs;
    let new_len = c
        .len()
        .checked_add(n)
        .ok_or(Error::Overflow("polynomial degree"))?;
    c.resize(new_len, 0);
    for m in (n..new_len).rev() {
        c[m] = c[m]
            .checked_sub(c[m - n])
            .ok_or(Error::Overflow("binomial multiplication"))?;
    }
    Ok(IntPoly::from_coeffs(c))
}

/// Multiplies by `1 - z^n`, keeping only the terms below `z^limit`.
pub fn mul_one_minus_zn_truncated(poly: IntPoly, n: usize, limit: usize) -> Result<IntPoly> {
    check_exponent(n)?;
    let mut c = poly.coeffs;
    c.truncate(limit);
    let len = (c.len() + n).min(limit);
    c.resize(len, 0);
    for m in (n..len).rev() {
        c[m] = c[m]
            .checked_sub(c[m - n])
            .ok_or(Error::Overflow("binomial multiplication"))?;
    }
    Ok(IntPoly::from_coeffs(c))
}

/// Exact quotient of `poly` by `z^n - 1`.
///
/// Synthetic division from the constant term: `q_m = q_{m-n} - poly_m`. The
/// division is exact iff the recurrence, continued over the top `n` positions,
/// produces zeros there.
pub fn divide_exact_zn_minus_one(poly: IntPoly, n: usize) -> Result<IntPoly> {
    check_exponent(n)?;
    if poly.is_zero() {
        return Ok(poly);
    }
    let mut c = poly.coeffs;
    for m in 0..c.len() {
        let prev = if m >= n { c[m - n] } else { 0 };
        c[m] = prev
            .checked_sub(c[m])
            .ok_or(Error::Overflow("synthetic division"))?;
    }
    if c.len() <= n || c[c.len() - n..].iter().any(|&v| v != 0) {
        return Err(Error::NonzeroRemainder { n });
    }
    c.truncate(c.len() - n);
    Ok(IntPoly::from_coeffs(c))
}

/// Exact quotient of `poly` by `1 - z^n`.
pub fn divide_exact_one_minus_zn(poly: IntPoly, n: usize) -> Result<IntPoly> {
    check_exponent(n)?;
    if poly.is_zero() {
        return Ok(poly);
    }
    let mut c = poly.coeffs;
    // q_m = poly_m + q_{m-n}
    for m in n..c.len() {
        c[m] = c[m]
            .checked_add(c[m - n])
            .ok_or(Error::Overflow("synthetic division"))?;
    }
    if c.len() <= n || c[c.len() - n..].iter().any(|&v| v != 0) {
        return Err(Error::NonzeroRemainder { n });
    }
    c.truncate(c.len() - n);
    Ok(IntPoly::from_coeffs(c))
}

/// Multiplies by `1 + z^n + z^(2n) + ...` modulo `z^limit` (strided prefix sums).
pub fn mul_geometric_truncated(poly: IntPoly, n: usize, limit: usize) -> Result<IntPoly> {
    check_exponent(n)?;
    if limit == 0 {
        return Err(Error::InvalidArgument("truncation limit must be positive".into()));
    }
    if poly.is_zero() {
        return Ok(poly);
    }
    let mut c = poly.coeffs;
    c.resize(limit, 0);
    for m in n..limit {
        c[m] = c[m]
            .checked_add(c[m - n])
            .ok_or(Error::Overflow("geometric series multiplication"))?;
    }
    Ok(IntPoly::from_coeffs(c))
}

/// True iff `a_m = a_{deg - m}` for every `m`. The zero polynomial counts as reciprocal.
pub fn is_reciprocal(poly: &IntPoly) -> bool {
    let c = poly.coeffs();
    c.iter().eq(c.iter().rev())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn canonical_zero() {
        assert_eq!(p(&[0, 0]), IntPoly::zero());
        assert_eq!(p(&[0]).degree(), None);
        assert_eq!(p(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
    }

    #[test]
    fn binomial_multiplication() {
        assert_eq!(mul_one_minus_zn(IntPoly::one(), 1).unwrap(), p(&[1, -1]));
        assert_eq!(
            mul_one_minus_zn(p(&[1, 1, 1]), 3).unwrap(),
            p(&[1, 1, 1, -1, -1, -1])
        );
        assert!(mul_one_minus_zn(IntPoly::one(), 0).is_err());
    }

    #[test]
    fn synthetic_division() {
        assert_eq!(divide_exact_zn_minus_one(p(&[-1, 0, 0, 1]), 3).unwrap(), IntPoly::one());
        assert_eq!(
            divide_exact_zn_minus_one(p(&[-1, 0, 0, 0, 0, 0, 1]), 3).unwrap(),
            p(&[1, 0, 0, 1])
        );
        assert_eq!(
            divide_exact_zn_minus_one(p(&[1, 1]), 1),
            Err(Error::NonzeroRemainder { n: 1 })
        );
        // degree below the divisor
        assert_eq!(
            divide_exact_zn_minus_one(p(&[5]), 2),
            Err(Error::NonzeroRemainder { n: 2 })
        );
        assert_eq!(divide_exact_one_minus_zn(p(&[1, 0, -1]), 2).unwrap(), IntPoly::one());
    }

    #[test]
    fn cyclotomic_fifteen_by_chain() {
        // (z^15 - 1)(z - 1) / ((z^3 - 1)(z^5 - 1))
        let mut num = vec![0i64; 17];
        num[0] = 1;
        num[1] = -1;
        num[15] = -1;
        num[16] = 1;
        let q = divide_exact_zn_minus_one(p(&num), 3).unwrap();
        let q = divide_exact_zn_minus_one(q, 5).unwrap();
        assert_eq!(q, p(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));

        // the same through the canonical (1 - z^n) chain
        let q = mul_one_minus_zn(IntPoly::one(), 15).unwrap();
        let q = divide_exact_one_minus_zn(q, 5).unwrap();
        let q = mul_one_minus_zn(q, 1).unwrap();
        let q = divide_exact_one_minus_zn(q, 3).unwrap();
        assert_eq!(q, p(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
    }

    #[test]
    fn geometric_series() {
        assert_eq!(mul_geometric_truncated(p(&[1, 0, 0, -1]), 3, 10).unwrap(), IntPoly::one());
        assert_eq!(
            mul_geometric_truncated(IntPoly::one(), 2, 7).unwrap(),
            p(&[1, 0, 1, 0, 1, 0, 1])
        );
        assert_eq!(mul_geometric_truncated(p(&[1, -1]), 1, 5).unwrap(), IntPoly::one());
        assert!(mul_geometric_truncated(IntPoly::one(), 1, 0).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        assert_eq!(
            mul_one_minus_zn(p(&[0, i64::MIN]), 1),
            Err(Error::Overflow("binomial multiplication"))
        );
        assert!(mul_geometric_truncated(p(&[i64::MAX, 1]), 1, 3).is_err());
        assert!(p(&[0, i64::MIN]).negate_argument().is_err());
    }

    #[test]
    fn reciprocity() {
        assert!(is_reciprocal(&p(&[1, 1])));
        assert!(!is_reciprocal(&p(&[1, 2, 0, 1])));
        assert!(is_reciprocal(&IntPoly::zero()));
    }

    #[test]
    fn dilation_and_negation() {
        assert_eq!(p(&[1, -1, 1]).dilate(3).unwrap(), p(&[1, 0, 0, -1, 0, 0, 1]));
        assert_eq!(p(&[1, 1, 1]).negate_argument().unwrap(), p(&[1, -1, 1]));
        assert_eq!(format!("{}", p(&[1, -1, 0, 2])), "1 - z + 2z^3");
    }
}
