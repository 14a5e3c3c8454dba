//! Work units of the finite region search: one `(a, m)` pair for a fixed `y`.

use std::cmp::Ordering;

use serde::Serialize;

use super::sieve::ModularSieve;
use crate::arith::{cmp_powersum, ln_big};
use crate::bounds::{zx_gap_max, BoundSet};
use crate::filters::{divisibility_filter, lemma_y};
use crate::model::{ExponentTriple, Instance, Solution};
use crate::{Error, Result};

/// `(a, m, y)` with its `x` window; only built for pairs that pass the
/// divisibility and `y`-consistency checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WorkUnit {
    pub a: u64,
    pub m: u64,
    pub y: u32,
    pub x_min: u32,
    pub x_max: u32,
}

/// Counters and solutions from scanning one unit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnitScan {
    pub found: Vec<Solution>,
    /// `(x, z)` pairs that reached the sieve.
    pub candidates: u64,
    /// Pairs no sieve prime could reject; each was compared exactly.
    pub sieve_survivors: u64,
}

impl WorkUnit {
    pub fn new(bounds: &BoundSet, a: u64, m: u64, y: u32) -> Result<Self> {
        let reject = |why: String| Err(Error::UnitRejected(format!("(a, m, y) = ({a}, {m}, {y}): {why}")));
        if m < 2 {
            return reject("the region search needs m >= 2".into());
        }
        let inst = Instance::new(a, m)?;
        let (big_a, _, big_c) = inst.terms_u64();
        if big_a >= bounds.a_max_refined {
            return reject(format!("2am + 1 = {big_a} is not below {}", bounds.a_max_refined));
        }
        if !divisibility_filter(a, m, y).is_pass() {
            return reject("a does not divide (2m)^(y-1)".into());
        }
        if lemma_y(inst)? != Some(y) {
            return reject("y differs from v2(a)/v2(2m) + 1".into());
        }
        let (x_min, x_max) = bounds.x_rule.window(big_c, y, a, m);
        Ok(Self { a, m, y, x_min, x_max })
    }

    pub fn instance(&self) -> Instance {
        Instance::new(self.a, self.m).expect("validated at construction")
    }

    /// All solutions with odd `x` in the window and even `z` near `x log A / log C`
    /// within the gap rule.
    pub fn scan(&self) -> UnitScan {
        let inst = self.instance();
        let (big_a, _, big_c) = inst.terms();
        let c = inst.terms_u64().2;
        let ratio = ln_big(&big_a) / ln_big(&big_c);
        scan_odd_x(inst, self.y, self.x_min, self.x_max, |x| {
            let g = zx_gap_max(c, x);
            if g == 0 {
                return None;
            }
            // A true solution has x log A < z log C < x log A + log 2, so z sits
            // within one of x log A / log C; two on each side covers float error.
            let z0 = (x as f64 * ratio).round() as i64;
            let lo = (x as i64 + 1).max(z0 - 2);
            let hi = (x as i64 + g as i64).min(z0 + 2);
            (lo <= hi).then_some((lo as u32, hi as u32))
        })
    }
}

/// Scan odd `x` in `[x_min, x_max]` and even `z` in `zspan(x)`, sieving before
/// any exact comparison.
pub(crate) fn scan_odd_x(
    inst: Instance,
    y: u32,
    x_min: u32,
    x_max: u32,
    zspan: impl Fn(u32) -> Option<(u32, u32)>,
) -> UnitScan {
    let mut out = UnitScan::default();
    let x_start = x_min | 1;
    if x_start > x_max {
        return out;
    }
    let (big_a, big_b, big_c) = inst.terms();
    let sieve = ModularSieve::new(inst);
    let b_res = sieve.b_residues(y);
    let mut a_res = sieve.a_residues(x_start);
    let mut x = x_start;
    loop {
        if let Some((lo, hi)) = zspan(x) {
            for z in (lo + lo % 2..=hi).step_by(2) {
                out.candidates += 1;
                if sieve.reject(&a_res, &b_res, z).is_some() {
                    continue;
                }
                out.sieve_survivors += 1;
                if cmp_powersum(&big_a, x, &big_b, y, &big_c, z) == Ordering::Equal {
                    let e = ExponentTriple::new(x, y, z).expect("positive exponents");
                    out.found.push(Solution::verify(inst, e).expect("exact equality just checked"));
                }
            }
        }
        match x.checked_add(2) {
            Some(next) if next <= x_max => x = next,
            _ => break,
        }
        sieve.advance_by_two(&mut a_res);
    }
    out
}

/// Admissible units for `y`, ordered by `a m` then `a`.
pub fn partition_work(bounds: &BoundSet, y: u32) -> Vec<WorkUnit> {
    let mut units = Vec::new();
    let mut m = 2u64;
    while 4 * m + 1 < bounds.a_max_refined {
        let mut a = 2u64;
        while 2 * a * m + 1 < bounds.a_max_refined {
            if let Ok(u) = WorkUnit::new(bounds, a, m, y) {
                units.push(u);
            }
            a += 1;
        }
        m += 1;
    }
    units.sort_by_key(|u| (u.a * u.m, u.a));
    units
}
