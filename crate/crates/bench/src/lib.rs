//! Criterion benchmarks for the `iepoly` constructions; see `benches/`.

use iepoly::TernaryContext;

/// Third parameters `r` for the `(3, 5, r)` ladder, each coprime to 15.
pub const LADDER: [u64; 3] = [1001, 10001, 100001];

pub fn ladder() -> Vec<TernaryContext> {
    LADDER
        .iter()
        .map(|&r| TernaryContext::new(3, 5, r).expect("coprime to 15"))
        .collect()
}
