use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::TernaryContext;
use crate::error::{Error, Result};

/// Receives coefficients `a_0, a_1, ...` in order.
pub trait CoefficientSink {
    fn accept(&mut self, m: u64, a: i64);
}

/// Discards everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullSink;

impl CoefficientSink for NullSink {
    fn accept(&mut self, _m: u64, _a: i64) {}
}

impl CoefficientSink for Vec<i64> {
    fn accept(&mut self, _m: u64, a: i64) {
        self.push(a);
    }
}

/// Adapts a closure.
pub struct FnSink<F>(pub F);

impl<F: FnMut(u64, i64)> CoefficientSink for FnSink<F> {
    fn accept(&mut self, m: u64, a: i64) {
        (self.0)(m, a)
    }
}

impl<S: CoefficientSink + ?Sized> CoefficientSink for &mut S {
    fn accept(&mut self, m: u64, a: i64) {
        (**self).accept(m, a)
    }
}

/// Extremes and value set of one coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSummary {
    pub a_plus: i64,
    pub a_minus: i64,
    /// `max(|a_plus|, |a_minus|)`
    pub height: i64,
    /// Distinct coefficient values, ascending.
    pub coeff_set: Vec<i64>,
    #[serde(rename = "flat")]
    pub is_flat: bool,
    pub degree: i64,
}

impl CoeffSummary {
    /// Summarizes a full coefficient vector `a_0..=a_degree`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut acc = Accumulator::default();
        for &a in coeffs {
            acc.push(a);
        }
        acc.finish(coeffs.len() as i64 - 1)
    }

    /// True iff the value set is every integer between `a_minus` and `a_plus`.
    pub fn is_consecutive(&self) -> bool {
        self.coeff_set.len() as i64 == self.a_plus - self.a_minus + 1
            && self.coeff_set.first() == Some(&self.a_minus)
            && self.coeff_set.last() == Some(&self.a_plus)
    }

    /// The value set negated, ascending.
    pub fn negated_set(&self) -> Vec<i64> {
        self.coeff_set.iter().rev().map(|v| -v).collect()
    }
}

#[derive(Default)]
struct Accumulator {
    seen: BTreeSet<i64>,
    last: Option<i64>,
    a_plus: i64,
    a_minus: i64,
}

impl Accumulator {
    #[inline]
    fn push(&mut self, a: i64) {
        if self.last != Some(a) {
            self.seen.insert(a);
            self.last = Some(a);
            self.a_plus = self.a_plus.max(a);
            self.a_minus = self.a_minus.min(a);
        }
    }

    fn finish(self, degree: i64) -> CoeffSummary {
        let (a_plus, a_minus) = match (self.seen.first(), self.seen.last()) {
            (Some(&lo), Some(&hi)) => (hi, lo),
            _ => (0, 0),
        };
        let height = a_plus.abs().max(a_minus.abs());
        CoeffSummary {
            a_plus,
            a_minus,
            height,
            coeff_set: self.seen.into_iter().collect(),
            is_flat: height == 1,
            degree,
        }
    }
}

/// Tracks `chi(n)` as `n` advances by one, with no division on the hot path.
#[derive(Clone, Copy, Debug)]
struct ChiCursor {
    n: i64,
    /// `x_n = [n (qr)^-1]_p`
    x: i64,
    /// `y_n = [n (rp)^-1]_q`
    y: i64,
}

/// Offsets and signs of the eight `chi` terms in `a_m - a_{m-1}`.
const fn step_terms(p: i64, q: i64, r: i64) -> [(i64, i64); 8] {
    [
        (0, 1),
        (-q, -1),
        (-r, -1),
        (-q - r, 1),
        (-p, -1),
        (-p - q, 1),
        (-p - r, 1),
        (-p - q - r, -1),
    ]
}

/// Coefficients `a_start, a_{start+1}, ...` up to `a_{pqr-1}`, each in O(1) time
/// and O(1) memory: `a_m - a_{m-1} = psi_qr(m) - psi_qr(m - p)`.
///
/// Items are `(m, a_m)`. Indices below zero yield zero, as do indices between
/// the degree and `pqr`.
#[derive(Clone, Debug)]
pub struct CoeffStream<'a> {
    ctx: &'a TernaryContext,
    next_m: i64,
    current: i64,
    primed: bool,
    cursors: [ChiCursor; 8],
    signs: [i64; 8],
    step_x: i64,
    step_y: i64,
}

impl<'a> CoeffStream<'a> {
    pub fn new(ctx: &'a TernaryContext, start: i64) -> Result<Self> {
        let current = ctx.coeff_at(start)?;
        let terms = step_terms(ctx.p, ctx.q, ctx.r);
        let cursor = |n: i64| ChiCursor {
            n,
            x: n.rem_euclid(ctx.p) * ctx.inv_qr % ctx.p,
            y: n.rem_euclid(ctx.q) * ctx.inv_rp % ctx.q,
        };
        Ok(CoeffStream {
            ctx,
            next_m: start,
            current,
            primed: false,
            cursors: terms.map(|(off, _)| cursor(start + 1 + off)),
            signs: terms.map(|(_, s)| s),
            step_x: ctx.inv_qr,
            step_y: ctx.inv_rp,
        })
    }

    #[inline]
    fn advance(&mut self) -> i64 {
        let (p, q, qr, rp) = (self.ctx.p, self.ctx.q, self.ctx.qr, self.ctx.rp);
        let mut delta = 0;
        for (c, &s) in self.cursors.iter_mut().zip(&self.signs) {
            if c.n >= 0 && c.x * qr + c.y * rp <= c.n {
                delta += s;
            }
            c.n += 1;
            c.x += self.step_x;
            if c.x >= p {
                c.x -= p;
            }
            c.y += self.step_y;
            if c.y >= q {
                c.y -= q;
            }
        }
        delta
    }
}

impl Iterator for CoeffStream<'_> {
    type Item = (i64, i64);

    fn next(&mut self) -> Option<(i64, i64)> {
        if self.next_m >= self.ctx.pqr {
            return None;
        }
        if self.primed {
            let step = self.advance();
            debug_assert!(step.abs() <= 1, "coefficient step {step} at m={}", self.next_m);
            self.current += step;
        }
        self.primed = true;
        let item = (self.next_m, self.current);
        self.next_m += 1;
        Some(item)
    }
}

impl TernaryContext {
    pub fn stream_from(&self, start: i64) -> Result<CoeffStream<'_>> {
        CoeffStream::new(self, start)
    }

    /// Emits `a_0 ..= a_degree` into `sink` and returns their summary.
    ///
    /// Fails if a step exceeds one in absolute value, the last coefficient is
    /// not 1, or a spot check against the mirrored windowed sum
    /// (`a_m = a_{degree-m}` at powers of two) fails.
    pub fn stream<S: CoefficientSink>(&self, mut sink: S) -> Result<CoeffSummary> {
        let degree = self.degree();
        let mut acc = Accumulator::default();
        let mut prev: Option<i64> = None;
        for (m, a) in CoeffStream::new(self, 0)?.take(degree as usize + 1) {
            if let Some(b) = prev {
                if (a - b).abs() > 1 {
                    return Err(Error::Inconsistency(format!(
                        "coefficient step {} -> {} at m={m} for ({}, {}, {})",
                        b, a, self.p, self.q, self.r
                    )));
                }
            }
            if m > 0 && (m as u64).is_power_of_two() {
                let mirror = self.coeff_at(degree - m)?;
                if mirror != a {
                    return Err(Error::Inconsistency(format!(
                        "a_{m} = {a} but a_{} = {mirror}",
                        degree - m
                    )));
                }
            }
            acc.push(a);
            sink.accept(m as u64, a);
            prev = Some(a);
        }
        if prev != Some(1) {
            return Err(Error::Inconsistency(format!(
                "leading coefficient {prev:?}, expected 1"
            )));
        }
        Ok(acc.finish(degree))
    }

    /// Summary with constant memory.
    pub fn summary(&self) -> Result<CoeffSummary> {
        self.stream(NullSink)
    }

    /// The full coefficient vector through the stream.
    pub fn coefficients(&self) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.degree() as usize + 1);
        self.stream(&mut out)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_105_stream() {
        let c = TernaryContext::new(3, 5, 7).unwrap();
        let coeffs = c.coefficients().unwrap();
        assert_eq!(coeffs.len(), 49);
        assert_eq!(&coeffs[..8], &[1, 1, 1, 0, 0, -1, -1, -2]);
        let s = c.summary().unwrap();
        assert_eq!((s.a_plus, s.a_minus, s.height), (1, -2, 2));
        assert_eq!(s.coeff_set, vec![-2, -1, 0, 1]);
        assert!(s.is_consecutive());
        assert!(!s.is_flat);
    }

    #[test]
    fn stream_from_any_start_matches_window() {
        let c = TernaryContext::new(5, 3, 11).unwrap();
        for start in [-40, -1, 0, 17, 100] {
            for (m, a) in c.stream_from(start).unwrap().take(60) {
                assert_eq!(a, c.coeff_at(m).unwrap(), "m={m}");
            }
        }
        let tail: Vec<_> = c.stream_from(c.pqr() - 2).unwrap().collect();
        assert_eq!(tail.len(), 2);
    }

    #[test]
    fn flat_example() {
        let s = TernaryContext::new(3, 5, 16).unwrap().summary().unwrap();
        assert_eq!(s.height, 1);
        assert!(s.is_flat);
    }

    #[test]
    fn summary_from_vector() {
        let s = CoeffSummary::from_coeffs(&[1, -1, 0, 1, -1, 1, 0, -1, 1]);
        assert_eq!(s.coeff_set, vec![-1, 0, 1]);
        assert_eq!(s.degree, 8);
        assert_eq!(s.negated_set(), vec![-1, 0, 1]);
    }
}
