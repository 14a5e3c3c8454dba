//! The case `A^x <= (2m)^y` with `m > 1` and `x` odd.
//!
//! Three constraints cut this case down to a handful of triples:
//! `4 <= z <= floor(1.5 log 2m)`, `y > z`, and
//! `z < log(2m) / (log m − log(1.5^(1/y) floor(1.5 log 2m)))`.
//! The last bound shrinks as `y` grows, so `y = z + 1` is the most permissive
//! choice.

use serde::Serialize;

use super::Interval;

/// Values of `m` checked one by one; beyond this a monotone tail bound applies.
pub const SMALL_CASE_M_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SmallCase {
    pub m: u64,
    pub z: u32,
    pub x: u32,
}

/// `floor(1.5 log 2m)`, taking the larger value when rounding is ambiguous.
fn z_ceiling(m: u64) -> u64 {
    (Interval::ratio(3, 2) * Interval::from_u64(2 * m).ln()).hi.floor() as u64
}

/// Enclosure of `log(2m) / (log m − log(1.5^(1/y) L))`, `L = floor(1.5 log 2m)`.
/// `None` when the denominator may be non-positive (the bound is then vacuous).
pub fn small_case_bound(m: u64, y: u32) -> Option<Interval> {
    let l = z_ceiling(m);
    if l == 0 {
        return None;
    }
    let shift = Interval::ratio(3, 2).ln() / Interval::from_u64(y as u64);
    let denom = Interval::from_u64(m).ln() - (shift + Interval::from_u64(l).ln());
    if denom.lo <= 0.0 {
        return None;
    }
    Some(Interval::from_u64(2 * m).ln() / denom)
}

/// `z` survives unless the bound is certainly `<= z`.
fn z_survives(m: u64, z: u32) -> bool {
    small_case_bound(m, z + 1).is_none_or(|b| b.hi > z as f64)
}

/// For `m >= limit` no `z >= 4` survives: with `y >= 5` and `L <= 1.5 log 2m`,
/// the bound is below 4 once `2 · 1.5^(4/5) · (1.5 log 2m)^4 < m^3`. We test the
/// stronger `3 (1.5 log 2m)^4 < m^3`, whose two sides have a ratio that
/// decreases for `m >= 2`.
fn tail_clear(limit: u64) -> bool {
    let lhs = Interval::exact(3.0) * (Interval::ratio(3, 2) * Interval::from_u64(2 * limit).ln()).sqr().sqr();
    let rhs = Interval::from_u64(limit).sqr() * Interval::from_u64(limit);
    lhs.hi < rhs.lo
}

/// All `(m, z, x)` left by the three constraints, `x` odd and below `z`.
pub fn small_case_survivors() -> Vec<SmallCase> {
    assert!(tail_clear(SMALL_CASE_M_LIMIT), "tail bound does not hold at the scan limit");
    let mut out = Vec::new();
    for m in 2..SMALL_CASE_M_LIMIT {
        let top = z_ceiling(m);
        for z in 4..=top as u32 {
            if z_survives(m, z) {
                out.extend((1..z).step_by(2).map(|x| SmallCase { m, z, x }));
            }
        }
    }
    out
}
