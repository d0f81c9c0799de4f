//! The recursive height estimate for `r ≡ ±s (mod pq)` with small `s`, its
//! coarse corollary `A(p, q, pq ± s) <= s`, and the search for
//! `A(p, q, pq + 4) = 4`.
//!
//! Heights use the conventions `A(p, q, 1) = 0` and `A(p, q, 2) = 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_pq;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::ternary::TernaryContext;

fn check_s(p: u64, q: u64, s: u64) -> Result<()> {
    check_pq(p, q)?;
    if s == 0 {
        return Err(Error::ParameterTooSmall { value: 0, min: 1 });
    }
    let g = gcd(s, p * q);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: s.min(p * q),
            b: s.max(p * q),
            gcd: g,
        });
    }
    Ok(())
}

fn height(p: u64, q: u64, r: u64) -> Result<i64> {
    Ok(TernaryContext::sorted(p, q, r)?.summary()?.height)
}

/// `A(p, q, s)` with `A(p, q, 1) = 0` and `A(p, q, 2) = 1`; requires `gcd(s, pq) = 1`.
pub fn height_with_conventions(p: u64, q: u64, s: u64) -> Result<i64> {
    check_s(p, q, s)?;
    match s {
        1 => Ok(0),
        2 => Ok(1),
        _ => height(p, q, s),
    }
}

/// Heights of `(p, q, pq + s)` and `(p, q, pq - s)` against `A(p, q, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursiveBoundReport {
    pub p: u64,
    pub q: u64,
    pub s: u64,
    pub a_s: i64,
    pub r_up: u64,
    pub a_up: i64,
    pub up_within: bool,
    /// `pq - s`, present when it exceeds `max(p, q)`.
    pub r_down: Option<u64>,
    pub a_down: Option<i64>,
    pub down_within: Option<bool>,
    /// `s < max(p, q)`: the recursive regime. Otherwise both neighbours share
    /// the residue class (or its mirror) of `s` and the bound is an equality.
    pub recursive_regime: bool,
}

impl RecursiveBoundReport {
    pub fn within_bounds(&self) -> bool {
        self.up_within && self.down_within.unwrap_or(true)
    }
}

/// Checks `A(p,q,s) <= A(p,q,pq ± s) <= A(p,q,s) + 1`.
///
/// Accepts any `s >= 1` coprime to `pq`; `recursive_regime` tells whether
/// `s < max(p, q)`.
pub fn check_recursive_bound(p: u64, q: u64, s: u64) -> Result<RecursiveBoundReport> {
    let a_s = height_with_conventions(p, q, s)?;
    let pq = p * q;
    let big = p.max(q);
    let within = |a: i64| a_s <= a && a <= a_s + 1;
    let r_up = pq + s;
    let a_up = height(p, q, r_up)?;
    let r_down = pq.checked_sub(s).filter(|&r| r > big);
    let a_down = r_down.map(|r| height(p, q, r)).transpose()?;
    Ok(RecursiveBoundReport {
        p,
        q,
        s,
        a_s,
        r_up,
        a_up,
        up_within: within(a_up),
        r_down,
        a_down,
        down_within: a_down.map(within),
        recursive_regime: s < big,
    })
}

/// `A(p, q, pq + s) <= s` and `A(p, q, pq - s) <= s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check3F {
    pub p: u64,
    pub q: u64,
    pub s: u64,
    pub a_up: i64,
    pub a_down: i64,
    pub holds: bool,
    /// Both heights equal `s`.
    pub sharp: bool,
}

/// Requires `pq - s > max(p, q)`.
pub fn check_3f(p: u64, q: u64, s: u64) -> Result<Check3F> {
    check_s(p, q, s)?;
    let pq = p * q;
    if s >= pq || pq - s <= p.max(q) {
        return Err(Error::OutOfRange {
            what: "s",
            value: s as i64,
            range: format!("[1, {})", pq.saturating_sub(p.max(q))),
        });
    }
    let a_up = height(p, q, pq + s)?;
    let a_down = height(p, q, pq - s)?;
    let bound = s as i64;
    Ok(Check3F {
        p,
        q,
        s,
        a_up,
        a_down,
        holds: a_up <= bound && a_down <= bound,
        sharp: a_up == bound && a_down == bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqPlus4Row {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub height: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqPlus4Search {
    pub rows: Vec<PqPlus4Row>,
    /// Pairs with `A(p, q, pq + 4) = 4`.
    pub hits: Vec<(u64, u64)>,
    pub max_height: i64,
}

/// Computes `A(p, q, pq + 4)` for each pair; exploratory, asserts nothing.
pub fn search_pq_plus_4(pairs: &[(u64, u64)]) -> Result<PqPlus4Search> {
    for &(p, q) in pairs {
        check_s(p, q, 4)?;
    }
    let rows: Vec<PqPlus4Row> = pairs
        .par_iter()
        .map(|&(p, q)| {
            let r = p * q + 4;
            Ok(PqPlus4Row {
                p,
                q,
                r,
                height: height(p, q, r)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PqPlus4Search {
        hits: rows.iter().filter(|row| row.height == 4).map(|row| (row.p, row.q)).collect(),
        max_height: rows.iter().map(|row| row.height).max().unwrap_or(0),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        assert_eq!(height_with_conventions(3, 5, 1).unwrap(), 0);
        assert_eq!(height_with_conventions(3, 5, 2).unwrap(), 1);
        assert_eq!(height_with_conventions(3, 5, 7).unwrap(), 2);
        assert!(height_with_conventions(3, 5, 6).is_err());
        assert!(height_with_conventions(4, 5, 2).is_err());
    }

    #[test]
    fn recursive_bound_small_s() {
        let one = check_recursive_bound(3, 5, 1).unwrap();
        assert_eq!((one.a_s, one.a_up, one.a_down), (0, 1, Some(1)));
        assert!(one.within_bounds() && one.recursive_regime);

        let two = check_recursive_bound(3, 5, 2).unwrap();
        assert_eq!(two.r_up, 17);
        assert_eq!(two.r_down, Some(13));
        assert!(two.within_bounds());

        let iterated = check_recursive_bound(3, 16, 5).unwrap();
        assert_eq!(iterated.r_up, 53);
        assert_eq!(iterated.a_s, 1);
        assert!(iterated.a_up <= 2);
    }

    #[test]
    fn recursive_bound_residue_regime() {
        let r = check_recursive_bound(3, 5, 7).unwrap();
        assert!(!r.recursive_regime);
        assert_eq!(r.a_up, r.a_s);
        assert_eq!(r.a_down, Some(r.a_s));
        let far = check_recursive_bound(3, 5, 16).unwrap();
        assert_eq!(far.r_down, None);
    }

    #[test]
    fn coarse_bound() {
        let one = check_3f(3, 5, 1).unwrap();
        assert!(one.holds && one.sharp);
        assert!(check_3f(3, 5, 2).unwrap().holds);
        assert!(check_3f(5, 7, 4).unwrap().holds);
        assert!(check_3f(3, 5, 11).is_err());
    }

    #[test]
    fn pq_plus_four() {
        let found = search_pq_plus_4(&[(3, 5), (3, 7)]).unwrap();
        assert_eq!(found.rows.len(), 2);
        assert_eq!(found.rows[0].r, 19);
        assert_eq!(found.rows[1].r, 25);
        assert!(found.max_height <= 4);
        assert!(search_pq_plus_4(&[(4, 5)]).is_err());
    }
}
