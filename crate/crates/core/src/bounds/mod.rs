//! The bound cascade: from the two-logarithm lower bound to a finite search region.
//!
//! Every integer the cascade produces is computed twice in effect: the real
//! quantities behind it are carried as outward-rounded [`Interval`]s, and an
//! integer is only accepted when both endpoints round to the same value.

mod interval;
pub mod laurent;
mod small_case;

use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::vp_u64;
use crate::{Error, Result};

pub use interval::Interval;
pub use laurent::{
    family_form, lambda_upper, lambda_upper_with, laurent_lower, log_height, mult_indep, LinearForm, LAURENT_FACTOR,
    LAURENT_FLOOR, LAURENT_SHIFT,
};
pub use small_case::{small_case_bound, small_case_survivors, SmallCase, SMALL_CASE_M_LIMIT};

/// Version tag stamped into reports; bump when any cascade constant changes.
pub const BOUNDS_VERSION: &str = "cascade-1";

/// `d` in the refinement step: once `A^x > (2m)^(d y)`, `Λ < A^(−(d−1)x/d)`.
pub const REFINEMENT_DENOMINATOR: u32 = 1953;
/// Multiplier in the alternative exponent cap `x <= 1300 y`.
pub const X_RULE_Y_MULTIPLIER: u64 = 1300;
/// Coefficient in `(z − x) < 2x / (C log C)`.
pub const GAP_RULE_COEFFICIENT: u64 = 2;

const MAX_ITERATIONS: usize = 100;

/// `c` in `s < c · max{log(2s+1) + 0.38, 10}²` when `log Λ < −f · x log A`:
/// `c = 25.2 / f`.
pub fn s_coefficient(fraction: Ratio<u64>) -> Ratio<u64> {
    LAURENT_FACTOR / fraction
}

/// Where the supremum of admissible `s` lies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Supremum {
    /// Saturated regime: the supremum is exactly `100 c`.
    Exact(Ratio<u64>),
    /// Past saturation: an enclosure of the fixed point of the iteration.
    Enclosed(Interval),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SBound {
    pub coefficient: Ratio<u64>,
    /// Least integer `S` such that `s < c · max{…}²` fails for every real `s >= S`.
    pub s_max: u64,
    pub supremum: Supremum,
}

fn coefficient_interval(c: Ratio<u64>) -> Interval {
    Interval::ratio(*c.numer(), *c.denom())
}

/// `c · max{log(2s+1) + 0.38, 10}²` on intervals.
fn s_rhs(c: Interval, s: Interval) -> Interval {
    let log_term =
        ((s * Interval::exact(2.0) + Interval::exact(1.0)).ln() + Interval::ratio(38, 100)).max_with(LAURENT_FLOOR);
    c * log_term.sqr()
}

/// Solve `s < c · max{log(2s+1) + 0.38, 10}²` for its sharp integer cap.
pub fn solve_s_bound(c: Ratio<u64>) -> Result<SBound> {
    if *c.numer() == 0 {
        return Err(Error::Precondition("coefficient must be positive".into()));
    }
    let hundred_c = c * 100;
    let ceil = hundred_c.ceil().to_integer();
    let probe = Interval::from_u64(2 * ceil + 1).ln() + Interval::ratio(38, 100);
    if probe.hi <= LAURENT_FLOOR {
        // The right side is the constant 100c up to s = (e^9.62 − 1)/2, and grows
        // with slope below 1 afterwards, so 100c is the supremum.
        return Ok(SBound { coefficient: c, s_max: ceil, supremum: Supremum::Exact(hundred_c) });
    }
    if probe.lo <= LAURENT_FLOOR {
        return Err(Error::IntervalDisagreement {
            step: "solve_s_bound",
            detail: format!("saturation test straddles the floor at s = {ceil}"),
        });
    }

    let ci = coefficient_interval(c);
    let start = ci * Interval::exact(100.0);
    let (mut lo, mut hi) = (start.lo, start.hi);
    for _ in 0..MAX_ITERATIONS {
        let next_lo = s_rhs(ci, Interval::exact(lo)).lo;
        let next_hi = s_rhs(ci, Interval::exact(hi)).hi;
        let done = (next_lo - lo).abs() < 1e-9 && (next_hi - hi).abs() < 1e-9;
        lo = next_lo;
        hi = next_hi;
        if done {
            let enclosure = Interval { lo, hi };
            let s_max = enclosure.ceil().ok_or_else(|| Error::IntervalDisagreement {
                step: "solve_s_bound",
                detail: format!("fixed point {enclosure} straddles an integer"),
            })?;
            return Ok(SBound { coefficient: c, s_max: s_max as u64, supremum: Supremum::Enclosed(enclosure) });
        }
    }
    Err(Error::NoConvergence(c.to_string()))
}

/// Bounds on `A` implied by `s < s_max` and `s > C/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AMax {
    /// `2 s_max + 2`, from `C < 2 s_max` alone.
    pub generic: u64,
    /// From the real supremum of `s` and `C` odd; never larger than `generic`.
    pub refined: u64,
}

/// `A < 2 s_max + 2`.
pub fn derive_a_max_generic(s_max: u64) -> u64 {
    2 * s_max + 2
}

/// Strict upper bounds on `A = C + 2` given `C/2 < s < sup`.
pub fn derive_a_max(s: &SBound) -> AMax {
    let c_below = match s.supremum {
        Supremum::Exact(r) => {
            let two = r * 2;
            if two.is_integer() {
                two.to_integer() - 1
            } else {
                two.floor().to_integer()
            }
        }
        Supremum::Enclosed(iv) => (iv * Interval::exact(2.0)).largest_int_below_conservative() as u64,
    };
    let c_max = if c_below % 2 == 0 { c_below - 1 } else { c_below };
    AMax { generic: derive_a_max_generic(s.s_max), refined: c_max + 3 }
}

/// Largest `y` allowed by `y = v2(a)/v2(2m) + 1`, split by the parity of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct YCaps {
    pub even_m: u32,
    pub odd_m: u32,
}

impl YCaps {
    pub fn max(&self) -> u32 {
        self.even_m.max(self.odd_m)
    }
}

/// Maximum of `floor(v2(a)/v2(2m)) + 1` over `a >= 2`, `m >= 2`, `2am + 1 < a_max`.
/// Returns 1 for a parity class with no admissible `(a, m)`.
pub fn derive_y_caps(a_max: u64) -> YCaps {
    let mut caps = YCaps { even_m: 1, odd_m: 1 };
    let mut m = 2u64;
    loop {
        // 2am + 1 < a_max  <=>  a <= (a_max - 2) / (2m)
        let a_top = a_max.saturating_sub(2) / (2 * m);
        if a_top < 2 {
            break;
        }
        let v2a = 63 - a_top.leading_zeros();
        let cap = v2a / vp_u64(2, 2 * m) + 1;
        let slot = if m.is_multiple_of(2) { &mut caps.even_m } else { &mut caps.odd_m };
        *slot = (*slot).max(cap);
        m += 1;
    }
    caps
}

/// Exponent caps on `x`: `x < coef · log C` or `x <= mult · y`, plus `x >= am`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XRule {
    pub log_coefficient: u64,
    pub y_multiplier: u64,
}

impl XRule {
    /// `(x_min, x_max)`: `x_min` is `am` rounded up to odd; `x_max` is the
    /// larger of the two caps.
    pub fn window(&self, c: u64, y: u32, a: u64, m: u64) -> (u32, u32) {
        let am = a * m;
        let x_min = if am.is_multiple_of(2) { am + 1 } else { am };
        let log_cap = (Interval::from_u64(self.log_coefficient) * Interval::from_u64(c).ln())
            .largest_int_below_conservative() as u64;
        let x_max = (self.y_multiplier * y as u64).max(log_cap);
        (x_min as u32, x_max as u32)
    }
}

/// Largest `g` with `g < 2x / (C log C)`: `z` ranges over `x+1 ..= x+g`.
/// Where rounding is ambiguous the larger value is returned.
pub fn zx_gap_max(c: u64, x: u32) -> u32 {
    let v = Interval::from_u64(GAP_RULE_COEFFICIENT * x as u64) / (Interval::from_u64(c) * Interval::from_u64(c).ln());
    v.largest_int_below_conservative().max(0) as u32
}

/// The constants of the finite search region, each with its justification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSet {
    pub s_max_coarse: u64,
    pub a_max_coarse: u64,
    pub y_caps_coarse: YCaps,
    pub refinement_x_floor: u64,
    pub s_max_refined: u64,
    pub a_max_refined_generic: u64,
    pub a_max_refined: u64,
    pub y_caps_final: YCaps,
    pub y_cap_final: u32,
    pub x_rule: XRule,
    pub gap_rule_coefficient: u64,
}

/// One serialized constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: Value,
    pub anchor: &'static str,
    pub derivation: String,
}

fn cascade_err(step: &'static str, detail: impl Into<String>) -> Error {
    Error::Cascade { step, detail: detail.into() }
}

/// Run the cascade: coarse `s` cap, coarse `A` cap, `y` caps, the refinement
/// argument, refined caps and the `x` rule.
pub fn build_bound_set() -> Result<BoundSet> {
    let coarse = solve_s_bound(s_coefficient(Ratio::new(1, 2)))?;
    let a_coarse = derive_a_max(&coarse);
    let y_coarse = derive_y_caps(a_coarse.refined);

    let d = REFINEMENT_DENOMINATOR as u64;
    let refined = solve_s_bound(s_coefficient(Ratio::new(d - 1, d)))?;
    let a_refined = derive_a_max(&refined);
    if a_refined.refined > a_coarse.refined {
        return Err(cascade_err("A_max_refined", "refined bound exceeds the coarse one"));
    }

    // Premise of the refinement: if A >= a_refined then C >= a_refined - 2 and
    // x > C log C / 2, which must exceed d * y so that A^x > (2m)^(d y).
    let c_min = a_refined.refined - 2;
    let half = Interval::from_u64(c_min) * Interval::from_u64(c_min).ln() / Interval::exact(2.0);
    let x_floor =
        half.floor().ok_or_else(|| cascade_err("refinement_x_floor", format!("C log C / 2 = {half} is ambiguous")))?
            as u64
            + 1;
    if x_floor <= d * y_coarse.max() as u64 {
        return Err(cascade_err(
            "refinement_premise",
            format!("x >= {x_floor} does not exceed {d} * {}", y_coarse.max()),
        ));
    }

    let x_alt = solve_s_bound(s_coefficient(Ratio::new(X_RULE_Y_MULTIPLIER - 1, X_RULE_Y_MULTIPLIER)))?;
    if x_alt.s_max > refined.s_max {
        return Err(cascade_err("x_rule", format!("x > {X_RULE_Y_MULTIPLIER} y only yields s < {}", x_alt.s_max)));
    }

    let y_final = derive_y_caps(a_refined.refined);
    if y_final.even_m > y_coarse.even_m || y_final.odd_m > y_coarse.odd_m {
        return Err(cascade_err("y_cap_final", "refined y caps exceed the coarse ones"));
    }

    Ok(BoundSet {
        s_max_coarse: coarse.s_max,
        a_max_coarse: a_coarse.refined,
        y_caps_coarse: y_coarse,
        refinement_x_floor: x_floor,
        s_max_refined: refined.s_max,
        a_max_refined_generic: a_refined.generic,
        a_max_refined: a_refined.refined,
        y_caps_final: y_final,
        y_cap_final: y_final.max(),
        x_rule: XRule { log_coefficient: refined.s_max, y_multiplier: X_RULE_Y_MULTIPLIER },
        gap_rule_coefficient: GAP_RULE_COEFFICIENT,
    })
}

static CACHED: OnceLock<std::result::Result<BoundSet, String>> = OnceLock::new();

/// [`build_bound_set`], computed once per process.
pub fn cached_bound_set() -> Result<&'static BoundSet> {
    CACHED
        .get_or_init(|| build_bound_set().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| cascade_err("cached", e.clone()))
}

/// `x_window` under the cascade's `x` rule.
pub fn x_window(c: u64, y: u32, a: u64, m: u64) -> Result<(u32, u32)> {
    Ok(cached_bound_set()?.x_rule.window(c, y, a, m))
}

impl BoundSet {
    pub fn entries(&self) -> Vec<BoundEntry> {
        let d = REFINEMENT_DENOMINATOR;
        vec![
            BoundEntry {
                name: "s_max_coarse",
                value: json!(self.s_max_coarse),
                anchor: "s = x/log C < 50.4 max{log(2s+1)+0.38, 10}^2",
                derivation: "two-log lower bound against log Λ < -(x/2) log A; saturated, so s < 100c".into(),
            },
            BoundEntry {
                name: "A_max_coarse",
                value: json!(self.a_max_coarse),
                anchor: "x > (C log C / 2)(z - x), hence C/2 < s",
                derivation: format!("C odd and C < 2s <= {}: A = C + 2 < {}", 2 * self.s_max_coarse, self.a_max_coarse),
            },
            BoundEntry {
                name: "y_cap_even_m",
                value: json!(self.y_caps_coarse.even_m),
                anchor: "y = v2(a)/v2(2m) + 1",
                derivation: format!("max over m >= 2 even, 2am + 1 < {}", self.a_max_coarse),
            },
            BoundEntry {
                name: "y_cap_odd_m",
                value: json!(self.y_caps_coarse.odd_m),
                anchor: "y = v2(a)/v2(2m) + 1",
                derivation: format!("max over m >= 3 odd, 2am + 1 < {}", self.a_max_coarse),
            },
            BoundEntry {
                name: "refinement_x_floor",
                value: json!(self.refinement_x_floor),
                anchor: "A >= A_max_refined would force x > C log C / 2",
                derivation: format!(
                    "x >= {} > {d} * {} so A^x > (2m)^({d} y)",
                    self.refinement_x_floor,
                    self.y_caps_coarse.max()
                ),
            },
            BoundEntry {
                name: "s_max_refined",
                value: json!(self.s_max_refined),
                anchor: "s < 25.2 (1953/1952) max{log(2s+1)+0.38, 10}^2",
                derivation: format!("log Λ < -({}/{d}) x log A", d - 1),
            },
            BoundEntry {
                name: "A_max_refined_generic",
                value: json!(self.a_max_refined_generic),
                anchor: "A < 2 s_max + 2",
                derivation: "integer cap on s alone".into(),
            },
            BoundEntry {
                name: "A_max_refined",
                value: json!(self.a_max_refined),
                anchor: "A < 5044",
                derivation: "C odd and C < 2s with s below 100c = 2521.29...".into(),
            },
            BoundEntry {
                name: "y_cap_final_even_m",
                value: json!(self.y_caps_final.even_m),
                anchor: "y = v2(a)/v2(2m) + 1",
                derivation: format!("max over m >= 2 even, 2am + 1 < {}", self.a_max_refined),
            },
            BoundEntry {
                name: "y_cap_final_odd_m",
                value: json!(self.y_caps_final.odd_m),
                anchor: "y = v2(a)/v2(2m) + 1",
                derivation: format!("max over m >= 3 odd, 2am + 1 < {}", self.a_max_refined),
            },
            BoundEntry {
                name: "y_cap_final",
                value: json!(self.y_cap_final),
                anchor: "y <= 10",
                derivation: "larger of the two refined parity caps".into(),
            },
            BoundEntry {
                name: "x_rule_log_coefficient",
                value: json!(self.x_rule.log_coefficient),
                anchor: "x < 2522 log(A - 2)",
                derivation: "s < s_max_refined with s = x / log C".into(),
            },
            BoundEntry {
                name: "x_rule_y_multiplier",
                value: json!(self.x_rule.y_multiplier),
                anchor: "x <= 1300 y",
                derivation: format!(
                    "x > {m} y gives log Λ < -({}/{m}) x log A, whose s cap does not exceed s_max_refined",
                    X_RULE_Y_MULTIPLIER - 1,
                    m = X_RULE_Y_MULTIPLIER
                ),
            },
            BoundEntry {
                name: "gap_rule_coefficient",
                value: json!(self.gap_rule_coefficient),
                anchor: "(z - x) log C < 2x / C",
                derivation: "z ranges over x+1 ..= x + g with g < 2x / (C log C)".into(),
            },
            BoundEntry {
                name: "x_floor_rule",
                value: json!("x >= am"),
                anchor: "e < (C/A)^x ... gives x > (2am - 1)/2",
                derivation: "rounded up to odd because x is odd in the searched case".into(),
            },
        ]
    }

    /// `{"bounds_version", "constants": [...], "values": {name: value}}`.
    pub fn to_json(&self) -> Value {
        let entries = self.entries();
        let values: Map<String, Value> = entries.iter().map(|e| (e.name.to_string(), e.value.clone())).collect();
        json!({
            "bounds_version": BOUNDS_VERSION,
            "constants": entries,
            "values": values,
        })
    }

    /// `y` caps for a given parity of `m`.
    pub fn y_cap_for(&self, m: u64) -> u32 {
        if m.is_multiple_of(2) {
            self.y_caps_final.even_m
        } else {
            self.y_caps_final.odd_m
        }
    }

    /// The real supremum of `s` behind `s_max_refined`.
    pub fn refined_s_supremum(&self) -> f64 {
        let d = REFINEMENT_DENOMINATOR as u64;
        let c = s_coefficient(Ratio::new(d - 1, d)) * 100;
        c.to_f64().unwrap_or(f64::NAN)
    }
}
