//! Necessary conditions every solution satisfies, as executable predicates.
//!
//! Each filter returns a [`FilterVerdict`] naming itself and the congruence or
//! valuation argument behind it, so a pruned candidate can always be explained.
//! `Exclude` is only returned when the condition provably fails.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{factor_u64, ipow, modpow_u64, vp_u64};
use crate::model::{ExponentTriple, Instance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Exclude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterId {
    YOneM,
    ZParity,
    LemmaY,
    Divisibility,
    LemmaIneq,
    ImpValuation,
    Mod4M1,
}

impl FilterId {
    pub fn name(self) -> &'static str {
        match self {
            FilterId::YOneM => "y1-m",
            FilterId::ZParity => "z-parity",
            FilterId::LemmaY => "lemma-y",
            FilterId::Divisibility => "divisibility",
            FilterId::LemmaIneq => "lemma-ineq",
            FilterId::ImpValuation => "imp-valuation",
            FilterId::Mod4M1 => "mod4-m1",
        }
    }

    /// The argument the filter encodes.
    pub fn anchor(self) -> &'static str {
        match self {
            FilterId::YOneM => "y = 1, m > 1: reducing mod 2am gives 1 + 2m = 1 (mod 2am), impossible for a > 1",
            FilterId::ZParity => "m > 1: reducing mod 2m gives 1 = (-1)^z (mod 2m), so z is even",
            FilterId::LemmaY => "m > 1, x odd: y = v2(a)/(v2(m)+1) + 1 from a(x+z) = -(2m)^(y-1) (mod 2ma^2)",
            FilterId::Divisibility => "m > 1: a(x+z) = -(2m)^(y-1) (mod 2ma^2) forces a | (2m)^(y-1)",
            FilterId::LemmaIneq => "m > 1: 2am >= (2m)^y (x+z)^(-y)",
            FilterId::ImpValuation => "m > 1, p | 2m, v_p(x+z) < v_p(a) + v_p(2m): v_p(a) = (y-1) v_p(2m) - v_p(x+z)",
            FilterId::Mod4M1 => {
                "m = 1, x odd, y > 1, a odd: 2a+1 = 3 and 2a-1 = 1 (mod 4) contradict the equation mod 4"
            }
        }
    }
}

impl fmt::Display for FilterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FilterVerdict {
    pub outcome: Outcome,
    pub filter: FilterId,
}

impl FilterVerdict {
    fn of(filter: FilterId, pass: bool) -> Self {
        let outcome = if pass { Outcome::Pass } else { Outcome::Exclude };
        Self { outcome, filter }
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn reason(&self) -> String {
        format!("{}: {}", self.filter.name(), self.filter.anchor())
    }
}

fn require_m_gt_1(inst: Instance, what: &str) -> Result<()> {
    if inst.m() <= 1 {
        return Err(Error::FilterPrecondition(format!("{what} needs m > 1, got m = {}", inst.m())));
    }
    Ok(())
}

/// Predicted `v_p(a)` from the valuation identity, or `None` when
/// `v_p(x+z) >= v_p(a) + v_p(2m)` and the identity says nothing.
pub fn imp_valuation(inst: Instance, e: ExponentTriple, p: u64) -> Result<Option<i64>> {
    require_m_gt_1(inst, "imp_valuation")?;
    let two_m = 2 * inst.m();
    if p < 2 || !two_m.is_multiple_of(p) {
        return Err(Error::PrimeNotDividing { p, two_m });
    }
    let v_sum = vp_u64(p, e.x as u64 + e.z as u64) as i64;
    let v_a = vp_u64(p, inst.a()) as i64;
    let v_2m = vp_u64(p, two_m) as i64;
    if v_sum < v_a + v_2m {
        Ok(Some((e.y as i64 - 1) * v_2m - v_sum))
    } else {
        Ok(None)
    }
}

/// Verdict form of [`imp_valuation`] for one prime.
pub fn imp_valuation_filter(inst: Instance, e: ExponentTriple, p: u64) -> Result<FilterVerdict> {
    let pass = match imp_valuation(inst, e, p)? {
        None => true,
        Some(pred) => pred >= 0 && pred == vp_u64(p, inst.a()) as i64,
    };
    Ok(FilterVerdict::of(FilterId::ImpValuation, pass))
}

/// The only `y` compatible with an odd `x`, or `None` when `v2(m)+1` does not
/// divide `v2(a)` (then no odd-`x` solution exists for this `(a, m)`).
pub fn lemma_y(inst: Instance) -> Result<Option<u32>> {
    require_m_gt_1(inst, "lemma_y")?;
    let v2a = vp_u64(2, inst.a());
    let d = vp_u64(2, inst.m()) + 1;
    Ok(v2a.is_multiple_of(d).then_some(v2a / d + 1))
}

/// `2am (x+z)^y >= (2m)^y`, cross-multiplied so it stays in integers.
pub fn lemma_ineq(inst: Instance, e: ExponentTriple) -> FilterVerdict {
    let two_am = BigUint::from(2 * inst.a() * inst.m());
    let lhs = two_am * ipow(&BigUint::from(e.x as u64 + e.z as u64), e.y);
    let rhs = ipow(&BigUint::from(2 * inst.m()), e.y);
    FilterVerdict::of(FilterId::LemmaIneq, lhs >= rhs)
}

pub fn z_parity_filter(m: u64, z: u32) -> FilterVerdict {
    debug_assert!(m > 1);
    FilterVerdict::of(FilterId::ZParity, z.is_multiple_of(2))
}

/// `a | (2m)^(y-1)`.
pub fn divisibility_filter(a: u64, m: u64, y: u32) -> FilterVerdict {
    debug_assert!(y >= 1);
    let pass = a == 1 || modpow_u64(2 * m, (y - 1) as u64, a) == 0;
    FilterVerdict::of(FilterId::Divisibility, pass)
}

pub fn y1_m_filter(_a: u64, m: u64, y: u32) -> FilterVerdict {
    FilterVerdict::of(FilterId::YOneM, !(y == 1 && m > 1))
}

/// `m = 1`, `x` odd: odd `a` is impossible.
pub fn mod4_filter_m1(a: u64, _x: u32, _z: u32) -> FilterVerdict {
    FilterVerdict::of(FilterId::Mod4M1, a.is_multiple_of(2))
}

/// Run every filter whose hypotheses hold for the candidate, cheapest first,
/// stopping at the first exclusion. The returned list ends with the excluding
/// verdict if there is one.
pub fn pipeline(inst: Instance, e: ExponentTriple) -> Vec<FilterVerdict> {
    let (a, m) = (inst.a(), inst.m());
    let mut out = Vec::new();
    let mut push = |v: FilterVerdict| {
        out.push(v);
        v.is_pass()
    };
    if !push(y1_m_filter(a, m, e.y)) {
        return out;
    }
    if m == 1 {
        if e.x % 2 == 1 && e.y > 1 {
            push(mod4_filter_m1(a, e.x, e.z));
        }
        return out;
    }
    if !push(z_parity_filter(m, e.z)) {
        return out;
    }
    if e.x % 2 == 1 {
        let consistent = lemma_y(inst).expect("m > 1") == Some(e.y);
        if !push(FilterVerdict::of(FilterId::LemmaY, consistent)) {
            return out;
        }
    }
    if !push(divisibility_filter(a, m, e.y)) {
        return out;
    }
    if !push(lemma_ineq(inst, e)) {
        return out;
    }
    for (p, _) in factor_u64(2 * m) {
        if !push(imp_valuation_filter(inst, e, p).expect("p | 2m and m > 1")) {
            return out;
        }
    }
    out
}

/// The first excluding verdict of [`pipeline`], if any.
pub fn first_exclusion(inst: Instance, e: ExponentTriple) -> Option<FilterVerdict> {
    pipeline(inst, e).into_iter().find(|v| !v.is_pass())
}

/// Closed-form identities that the small-exponent cases reduce to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityScan {
    /// `(2m)^(y-1) = a(2am - 3)`: the case `z = 2`, `x = 1`.
    ZTwo { a: RangeInclusive<u64>, m: RangeInclusive<u64>, y: RangeInclusive<u32> },
    /// `a(4096a^3 - 1024a^2 + 96a - 5) = 2^(4y-4)`: `m = 8`, `z = 4`, `x = 1`.
    M8X1 { a: RangeInclusive<u64>, y: RangeInclusive<u32> },
    /// `a(4096a^3 - 1280a^2 + 48a - 7) = 2^(4y-4)`: `m = 8`, `z = 4`, `x = 3`.
    M8X3 { a: RangeInclusive<u64>, y: RangeInclusive<u32> },
}

/// A tuple `(a, m, y)` satisfying a scanned identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IdentityHit {
    pub a: u64,
    pub m: u64,
    pub y: u32,
}

/// `a * (4096a^3 + c2 a^2 + c1 a + c0)` for the `m = 8` identities.
pub(crate) fn m8_quartic(a: u64, c2: i128, c1: i128, c0: i128) -> BigUint {
    let a_big = BigUint::from(a);
    let a2 = &a_big * &a_big;
    let a3 = &a2 * &a_big;
    let pos = BigUint::from(4096u32) * &a3
        + if c2 > 0 { BigUint::from(c2 as u128) * &a2 } else { BigUint::default() }
        + if c1 > 0 { BigUint::from(c1 as u128) * &a_big } else { BigUint::default() }
        + if c0 > 0 { BigUint::from(c0 as u128) } else { BigUint::default() };
    let neg = if c2 < 0 { BigUint::from((-c2) as u128) * &a2 } else { BigUint::default() }
        + if c1 < 0 { BigUint::from((-c1) as u128) * &a_big } else { BigUint::default() }
        + if c0 < 0 { BigUint::from((-c0) as u128) } else { BigUint::default() };
    // 4096a^3 dominates the negative terms for every a >= 1.
    a_big * (pos - neg)
}

fn power_of_two_hits(a: u64, value: &BigUint, y: &RangeInclusive<u32>, out: &mut Vec<IdentityHit>) {
    let tz = match value.trailing_zeros() {
        Some(tz) => tz,
        None => return,
    };
    if value.bits() != tz + 1 || tz % 4 != 0 {
        return;
    }
    let yy = (tz / 4 + 1) as u32;
    if y.contains(&yy) {
        out.push(IdentityHit { a, m: 8, y: yy });
    }
}

/// Enumerate the identity over its ranges and return every satisfying tuple.
pub fn identity_scan(scan: &IdentityScan) -> Vec<IdentityHit> {
    let mut out = Vec::new();
    match scan {
        IdentityScan::ZTwo { a, m, y } => {
            for a in a.clone() {
                for m in m.clone() {
                    let target = match (2 * a * m).checked_sub(3) {
                        Some(t) => a as u128 * t as u128,
                        None => continue,
                    };
                    let base = 2 * m as u128;
                    let mut pow = 1u128;
                    let mut e = 0u32;
                    while pow < target {
                        pow = match pow.checked_mul(base) {
                            Some(p) => p,
                            None => break,
                        };
                        e += 1;
                    }
                    if pow == target && y.contains(&(e + 1)) {
                        out.push(IdentityHit { a, m, y: e + 1 });
                    }
                }
            }
        }
        IdentityScan::M8X1 { a, y } => {
            for a in a.clone() {
                power_of_two_hits(a, &m8_quartic(a, -1024, 96, -5), y, &mut out);
            }
        }
        IdentityScan::M8X3 { a, y } => {
            for a in a.clone() {
                power_of_two_hits(a, &m8_quartic(a, -1280, 48, -7), y, &mut out);
            }
        }
    }
    out
}
