//! Outward-rounded interval arithmetic on `f64`.
//!
//! Only what the bound cascade needs: positive quantities, `+ * / ln`, and
//! integer rounding that refuses to answer when the endpoints disagree.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

/// Ulps of slack added to each side of a libm `ln` result.
const LN_ULPS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(v: f64, n: usize) -> f64 {
    (0..n).fold(v, |acc, _| acc.next_down())
}

fn up(v: f64, n: usize) -> f64 {
    (0..n).fold(v, |acc, _| acc.next_up())
}

impl Interval {
    /// A value that is exactly representable.
    pub fn exact(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn from_u64(v: u64) -> Self {
        let f = v as f64;
        if f as u64 == v {
            Self::exact(f)
        } else {
            Self { lo: f.next_down(), hi: f.next_up() }
        }
    }

    pub fn ratio(num: u64, den: u64) -> Self {
        Self::from_u64(num) / Self::from_u64(den)
    }

    fn outward(lo: f64, hi: f64) -> Self {
        Self { lo: lo.next_down(), hi: hi.next_up() }
    }

    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of a non-positive interval");
        Self { lo: down(self.lo.ln(), LN_ULPS), hi: up(self.hi.ln(), LN_ULPS) }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn max_with(self, v: f64) -> Self {
        Self { lo: self.lo.max(v), hi: self.hi.max(v) }
    }

    /// `floor` of every point, if all points agree.
    pub fn floor(self) -> Option<i64> {
        let (a, b) = (self.lo.floor(), self.hi.floor());
        (a == b).then_some(a as i64)
    }

    /// `ceil` of every point, if all points agree.
    pub fn ceil(self) -> Option<i64> {
        let (a, b) = (self.lo.ceil(), self.hi.ceil());
        (a == b).then_some(a as i64)
    }

    /// Largest integer strictly below every point of the interval when they
    /// agree; otherwise the larger candidate (the conservative choice for an
    /// upper limit on a search range).
    pub fn largest_int_below_conservative(self) -> i64 {
        self.hi.ceil() as i64 - 1
    }

    pub fn contains(self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl Add for Interval {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::outward(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::outward(self.lo - o.hi, self.hi - o.lo)
    }
}

fn hull(c: [f64; 4]) -> Interval {
    let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Interval::outward(lo, hi)
}

impl Mul for Interval {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        hull([self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi])
    }
}

/// Division by an interval that does not contain zero.
impl Div for Interval {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "interval division by a range containing zero");
        hull([self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi])
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_encloses_true_value() {
        let i = Interval::from_u64(5).ln();
        assert!(i.contains(5f64.ln()));
        assert!(i.lo < i.hi);
    }

    #[test]
    fn rounding_helpers() {
        let i = Interval { lo: 2.3, hi: 2.7 };
        assert_eq!(i.floor(), Some(2));
        assert_eq!(i.ceil(), Some(3));
        assert_eq!(Interval { lo: 2.9, hi: 3.1 }.floor(), None);
        assert_eq!(Interval::exact(5.0).largest_int_below_conservative(), 4);
        assert_eq!(Interval { lo: 4.9, hi: 5.1 }.largest_int_below_conservative(), 5);
    }

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::ratio(1, 3);
        assert!(a.contains(1.0 / 3.0));
        let b = a * Interval::from_u64(3);
        assert!(b.contains(1.0));
        let c = (Interval::from_u64(7) - Interval::from_u64(2)) / Interval::from_u64(5);
        assert!(c.contains(1.0));
    }
}
