//! Structural properties of ternary coefficients, checked against data.
//!
//! Small triples get the full vector padded with zeros up to `pqr`, a table
//! of `chi` built by enumerating combinations (independent of the digit
//! formulas), and exhaustive checks. Large triples are checked through
//! lock-stepped streams so memory stays constant.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_pq, FailureRecord, Finding, Severity};
use crate::arith::gcd;
use crate::error::Result;
use crate::ternary::{CoeffSummary, TernaryContext};

/// First index where two vectors differ (or where their lengths diverge).
pub fn first_mismatch(check: &str, params: &[u64], expected: &[i64], actual: &[i64]) -> Option<FailureRecord> {
    if let Some(m) = expected.iter().zip(actual).position(|(a, b)| a != b) {
        return Some(FailureRecord::new(check, params, "coefficient mismatch").at(m as i64, expected[m], actual[m]));
    }
    (expected.len() != actual.len()).then(|| {
        FailureRecord::new(
            check,
            params,
            format!("length {} vs {}", expected.len(), actual.len()),
        )
    })
}

/// `chi` on `[0, pqr)`, built by marking every `i*qr + j*rp + k*pq < pqr`.
pub struct ChiTable {
    /// `chi(n)` at `n + pad`; the first `pad` entries stand for negative `n`.
    values: Vec<i64>,
    pad: i64,
}

impl ChiTable {
    pub fn new(ctx: &TernaryContext) -> Self {
        let n = ctx.pqr() as usize;
        let pad = ctx.p() + ctx.q() + ctx.r() + ctx.p();
        let (qr, rp, pq) = (ctx.qr() as usize, ctx.rp() as usize, ctx.pq() as usize);
        let mut values = vec![0; pad as usize + n];
        let body = &mut values[pad as usize..];
        for a in (0..n).step_by(qr) {
            for b in (a..n).step_by(rp) {
                for c in (b..n).step_by(pq) {
                    body[c] = 1;
                }
            }
        }
        ChiTable { values, pad }
    }

    /// Zero below 0; panics at or above `pqr`.
    #[inline]
    pub fn get(&self, n: i64) -> i64 {
        if n < -self.pad {
            0
        } else {
            self.values[(n + self.pad) as usize]
        }
    }
}

/// Marks of `n in [0, pqr)` whose two given digits vanish, as prefix counts.
struct ZeroDigitMarks {
    prefix: Vec<u32>,
}

impl ZeroDigitMarks {
    /// `n = i*a + j*b` with `i < ia`, `j < jb`, i.e. the third digit and `delta` are zero.
    fn new(len: usize, a: usize, ia: usize, b: usize, jb: usize) -> Self {
        let mut marks = vec![0u32; len + 1];
        for i in 0..ia {
            for j in 0..jb {
                let n = i * a + j * b;
                if n < len {
                    marks[n + 1] = 1;
                }
            }
        }
        for k in 1..marks.len() {
            marks[k] += marks[k - 1];
        }
        ZeroDigitMarks { prefix: marks }
    }

    /// Marked count in `(hi - width, hi]`, clipped to `[0, len)`.
    fn count(&self, hi: i64, width: i64) -> u32 {
        let len = self.prefix.len() as i64 - 1;
        let top = (hi + 1).clamp(0, len) as usize;
        let bottom = (hi + 1 - width).clamp(0, len) as usize;
        self.prefix[top] - self.prefix[bottom]
    }
}

fn params_of(ctx: &TernaryContext) -> Vec<u64> {
    vec![ctx.p() as u64, ctx.q() as u64, ctx.r() as u64]
}

/// Collects at most one failure per named check.
struct Failures {
    params: Vec<u64>,
    out: Vec<FailureRecord>,
}

impl Failures {
    fn new(params: Vec<u64>) -> Self {
        Failures { params, out: Vec::new() }
    }

    fn seen(&self, check: &str) -> bool {
        self.out.iter().any(|f| f.check == check)
    }

    #[inline]
    fn value(&mut self, check: &str, ok: bool, index: i64, expected: i64, actual: i64) {
        if !ok && !self.seen(check) {
            let detail = format!("violated at {index}");
            self.out.push(FailureRecord::new(check, &self.params, detail).at(index, expected, actual));
        }
    }

    fn other(&mut self, check: &str, detail: impl Into<String>) {
        if !self.seen(check) {
            self.out.push(FailureRecord::new(check, &self.params, detail));
        }
    }
}

/// Above this, [`check_triple_full`] skips comparing `chi` paths against the table.
pub const DUAL_PATH_MAX_PQR: i64 = 5000;

/// Result of [`check_triple_full`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TripleReport {
    pub failures: Vec<FailureRecord>,
    pub findings: Vec<Finding>,
}

/// Exhaustive checks on one triple; `ctx` should be sorted (`p` smallest).
///
/// `coeffs` is `a_0..=a_degree` from any construction. Memory is `O(pqr)`.
pub fn check_triple_full(ctx: &TernaryContext, coeffs: &[i64]) -> TripleReport {
    let (p, q, r, pqr) = (ctx.p(), ctx.q(), ctx.r(), ctx.pqr());
    let (pq, qr, rp) = (ctx.pq(), ctx.qr(), ctx.rp());
    let mut fail = Failures::new(params_of(ctx));
    let mut findings = Vec::new();
    let len = pqr as usize;
    if coeffs.len() != ctx.degree() as usize + 1 {
        fail.other("degree", format!("{} coefficients", coeffs.len()));
        return TripleReport { failures: fail.out, findings };
    }
    let mut a = coeffs.to_vec();
    a.resize(len, 0);
    let at = |m: i64| if m < 0 { 0 } else { a[m as usize] };

    fail.value("anchor/a0", a[0] == 1, 0, 1, a[0]);
    fail.value("anchor/a_q", at(q) == -1, q, -1, at(q));

    let summary = CoeffSummary::from_coeffs(coeffs);
    if !summary.is_consecutive() {
        fail.other("consecutive_set", format!("{:?}", summary.coeff_set));
    }
    // Spread against the smallest parameter; a larger parameter is only a
    // fallback and is reported, not failed.
    let spread = summary.a_plus - summary.a_minus;
    if spread > r {
        fail.value("spread", false, 0, r, spread);
    } else if spread > p {
        findings.push(Finding::new(
            Severity::High,
            "spread_vs_min_parameter",
            &fail.params.clone(),
            format!("A+ - A- = {spread} > {p}"),
        ));
    }
    match ctx.summary() {
        Ok(s) if s == summary => {}
        Ok(s) => fail.other("stream_summary", format!("{s:?} vs {summary:?}")),
        Err(e) => fail.other("stream_summary", e.to_string()),
    }

    let table = ChiTable::new(ctx);
    for n in 0..pqr.min(DUAL_PATH_MAX_PQR) {
        let t = table.get(n);
        let direct = ctx.chi(n).map(i64::from);
        let via_f = ctx.chi_via_f(n).map(i64::from);
        if direct != Ok(t) || via_f != Ok(t) {
            fail.other("chi_paths", format!("n={n}: table {t}, digits {direct:?}, f {via_f:?}"));
            break;
        }
    }

    // Windowed identity at every m < pqr.
    let mut window: i64 = 0;
    let psi_qr = |n: i64| table.get(n) - table.get(n - q) - table.get(n - r) + table.get(n - q - r);
    for m in 0..pqr {
        window += psi_qr(m) - psi_qr(m - p);
        fail.value("window_identity", window == a[m as usize], m, window, a[m as usize]);
    }

    // Inclusion-exclusion over the three parameters: values in {-1, 0, 1}.
    for n in 0..pqr {
        let t = |k: i64| table.get(n - k);
        let v = t(0) - t(p) - t(q) - t(r) + t(p + q) + t(q + r) + t(p + r) - t(p + q + r);
        fail.value("triple_difference", v.abs() <= 1, n, 1, v);
    }
    for (u, v) in [(p, q), (q, r), (p, r)] {
        for n in 0..pqr {
            let s = table.get(n) - table.get(n - u) - table.get(n - v) + table.get(n - u - v);
            fail.value("psi_bound", s.abs() <= 1, n, 1, s);
        }
    }

    for m in 1..pqr {
        let d = at(m) - at(m - 1);
        fail.value("unit_step", d.abs() <= 1, m, 1, d);
    }

    // a_m = a_{m-L} unless the window set hits a number whose digit
    // complementary to L and delta both vanish.
    let marks = [
        (pq, ZeroDigitMarks::new(len, qr as usize, p as usize, rp as usize, q as usize)),
        (qr, ZeroDigitMarks::new(len, rp as usize, q as usize, pq as usize, r as usize)),
        (rp, ZeroDigitMarks::new(len, qr as usize, p as usize, pq as usize, r as usize)),
    ];
    for (lag, mk) in &marks {
        let check = format!("shift_invariance/{lag}");
        for m in 0..pqr {
            let hit = [0, q, r, q + r].iter().any(|&o| mk.count(m - o, p) > 0);
            if !hit {
                fail.value(&check, at(m) == at(m - lag), m, at(m - lag), at(m));
            }
        }
    }

    let jump_small = r >= p + q;
    for m in 0..pqr {
        for lag in [pq, qr, rp] {
            let d = at(m) - at(m - lag);
            fail.value("lagged_difference", d.abs() <= 2, m, 2, d);
        }
        if jump_small {
            let d = at(m) - at(m - pq);
            fail.value("lagged_difference_pq", d.abs() <= 1, m, 1, d);
        }
        let bound = 2 * ((m + qr - 1) / qr) + 1;
        fail.value("growth_bound", at(m).abs() <= bound, m, bound, at(m));
    }

    let deg = ctx.degree();
    for m in 0..=deg {
        let mirror = at(deg - m);
        fail.value("reciprocity", at(m) == mirror, m, mirror, at(m));
    }
    TripleReport { failures: fail.out, findings }
}

/// `decompose` reconstructs `n` with digits in range on `[-pqr, 2pqr)`, and
/// the digit box maps onto every residue modulo `pqr` exactly once.
pub fn check_decomposition(ctx: &TernaryContext) -> Vec<FailureRecord> {
    let (p, q, r, pqr) = (ctx.p(), ctx.q(), ctx.r(), ctx.pqr());
    let mut fail = Failures::new(params_of(ctx));
    for n in -pqr..2 * pqr {
        let d = ctx.decompose(n);
        let ok = (0..p).contains(&d.x)
            && (0..q).contains(&d.y)
            && (0..r).contains(&d.z)
            && d.x * ctx.qr() + d.y * ctx.rp() + d.z * ctx.pq() + d.delta * pqr == n;
        if !ok {
            fail.other("decomposition", format!("n={n}: {d:?}"));
        }
    }
    let mut hits = vec![0u8; pqr as usize];
    for x in 0..p {
        for y in 0..q {
            for z in 0..r {
                let n = (x * ctx.qr() + y * ctx.rp() + z * ctx.pq()) % pqr;
                hits[n as usize] += 1;
            }
        }
    }
    if let Some(n) = hits.iter().position(|&h| h != 1) {
        fail.other("decomposition_unique", format!("residue {n} hit {} times", hits[n]));
    }
    fail.out
}

/// `r ≡ s (mod pq)` and `n1 ≡ n2 (mod pq)` give equal `f`; `chi` agrees at
/// `k*r + j` and `k*s + j` (`k < pq`, `|j| < r`) and at `k*r + j - r` and
/// `k*s + j - r` (`|j| < min(r, pq)`).
///
/// Every admissible `r` in `(max(p,q), max(p,q) + pq]` is paired with
/// `r + pq` and `r + 2pq`.
pub fn check_residue_transfer(p: u64, q: u64) -> Result<Vec<FailureRecord>> {
    check_pq(p, q)?;
    let pq = p * q;
    let big = p.max(q);
    let mut out = Vec::new();
    for r in (big + 1..=big + pq).filter(|&r| gcd(r, pq) == 1) {
        let small = TernaryContext::new(p, q, r)?;
        for s in [r + pq, r + 2 * pq] {
            let large = TernaryContext::new(p, q, s)?;
            let mut fail = Failures::new(vec![p, q, r, s]);
            let (ri, si, pqi) = (r as i64, s as i64, pq as i64);
            for n in -2 * pqi..2 * pqi {
                for shift in [0, pqi, 5 * pqi] {
                    let (a, b) = (small.f(n), large.f(n + shift));
                    fail.value("f_transfer", a == b, n, a, b);
                }
            }
            for k in 0..pqi {
                for j in 1 - ri..ri {
                    let a = i64::from(small.chi(k * ri + j)?);
                    let b = i64::from(large.chi(k * si + j)?);
                    fail.value("chi_transfer", a == b, k * ri + j, a, b);
                }
                let lim = ri.min(pqi);
                for j in 1 - lim..lim {
                    let a = i64::from(small.chi(k * ri + j - ri)?);
                    let b = i64::from(large.chi(k * si + j - ri)?);
                    fail.value("chi_transfer_shifted", a == b, k * ri + j - ri, a, b);
                }
            }
            out.extend(fail.out);
        }
    }
    Ok(out)
}

/// Sorted pairwise-coprime triples `3 <= p < q < r` with `pqr` log-uniform
/// in `[min_pqr, max_pqr]`.
pub fn random_triples(count: usize, min_pqr: u64, max_pqr: u64, seed: u64) -> Vec<(u64, u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = ((min_pqr.max(60) as f64).ln(), (max_pqr.max(61) as f64).ln());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let target = rng.gen_range(lo..=hi).exp();
        let p_max = target.cbrt().max(3.0) as u64;
        let p = rng.gen_range(3..=p_max.max(3));
        let q_max = (target / p as f64).sqrt() as u64;
        if q_max <= p {
            continue;
        }
        let q = rng.gen_range(p + 1..=q_max);
        if gcd(p, q) != 1 {
            continue;
        }
        let mut r = ((target / (p * q) as f64) as u64).max(q + 1);
        while gcd(r, p * q) != 1 {
            r += 1;
        }
        if p * q * r <= max_pqr {
            out.push((p, q, r));
        }
    }
    out
}

/// Constant-memory checks on a large triple: unit steps, the growth bound,
/// lagged differences against streams started at `-qr` and `-pq`, and
/// `psi_uv` at `psi_samples` random points for random `u, v`.
pub fn check_triple_streaming(ctx: &TernaryContext, psi_samples: usize, seed: u64) -> Result<Vec<FailureRecord>> {
    let (p, q, r, pqr) = (ctx.p(), ctx.q(), ctx.r(), ctx.pqr());
    let (pq, qr) = (ctx.pq(), ctx.qr());
    let mut fail = Failures::new(params_of(ctx));

    let summary = ctx.summary()?;
    if !summary.is_consecutive() {
        fail.other("consecutive_set", format!("{:?}", summary.coeff_set));
    }
    let jump_small = r >= p + q;
    let main = ctx.stream_from(0)?;
    let lag_qr = ctx.stream_from(-qr)?;
    let lag_pq = ctx.stream_from(-pq)?;
    let mut prev = 0;
    for (((m, a), (_, b)), (_, c)) in main.zip(lag_qr).zip(lag_pq) {
        fail.value("unit_step", (a - prev).abs() <= 1, m, 1, a - prev);
        prev = a;
        let bound = 2 * ((m + qr - 1) / qr) + 1;
        fail.value("growth_bound", a.abs() <= bound, m, bound, a);
        fail.value("lagged_difference", (a - b).abs() <= 2, m, 2, a - b);
        let pq_limit = if jump_small { 1 } else { 2 };
        fail.value("lagged_difference_pq", (a - c).abs() <= pq_limit, m, pq_limit, a - c);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = [p, q, r];
    for _ in 0..psi_samples {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let u = if rng.gen_bool(0.5) { choices[i] } else { -choices[i] };
        let v = if rng.gen_bool(0.5) { choices[j] } else { -choices[j] };
        // the largest of n, n-u, n-v, n-u-v must stay below pqr
        let top = pqr - 1 + 0.min(u).min(v).min(u + v);
        let n = rng.gen_range(-p - q - r..=top);
        let value = ctx.psi(n, u, v)?;
        fail.value("psi_bound", value.abs() <= 1, n, 1, i64::from(value));
        let reflected = ctx.psi(n - u - v, -u, -v)?;
        fail.value("psi_reflection", value == reflected, n, i64::from(value), i64::from(reflected));
    }
    Ok(fail.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_table_matches_examples() {
        let c = TernaryContext::new(3, 5, 7).unwrap();
        let t = ChiTable::new(&c);
        assert_eq!((t.get(0), t.get(1), t.get(15), t.get(71), t.get(-3)), (1, 0, 1, 1, 0));
    }

    #[test]
    fn small_triples_pass() {
        for (p, q, r) in [(3, 5, 7), (3, 4, 5), (5, 7, 11), (3, 7, 8)] {
            let c = TernaryContext::sorted(p, q, r).unwrap();
            let coeffs = c.coefficients().unwrap();
            let report = check_triple_full(&c, &coeffs);
            assert!(report.failures.is_empty(), "{:?}", report.failures);
            assert!(check_decomposition(&c).is_empty());
        }
    }

    #[test]
    fn corrupted_vector_is_caught() {
        let c = TernaryContext::new(3, 5, 7).unwrap();
        let mut coeffs = c.coefficients().unwrap();
        coeffs[7] += 1;
        let report = check_triple_full(&c, &coeffs);
        assert!(report.failures.iter().any(|f| f.check == "window_identity" && f.index == Some(7)));
    }

    #[test]
    fn transfer_holds_for_small_pair() {
        assert!(check_residue_transfer(3, 5).unwrap().is_empty());
    }

    #[test]
    fn random_triples_are_valid() {
        let ts = random_triples(50, 20_000, 1_000_000, 7);
        assert_eq!(ts, random_triples(50, 20_000, 1_000_000, 7));
        for (p, q, r) in ts {
            assert!(3 <= p && p < q && q < r && p * q * r <= 1_000_000);
            assert!(TernaryContext::new(p, q, r).is_ok());
        }
    }

    #[test]
    fn streaming_checks_pass() {
        let c = TernaryContext::sorted(7, 11, 61).unwrap();
        assert!(check_triple_streaming(&c, 2000, 3).unwrap().is_empty());
    }
}
