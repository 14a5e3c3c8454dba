//! Instances of the equation family, exponent triples and verified solutions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::arith::{cmp_pow, cmp_powersum, ipow};
use crate::{Error, Result};

/// One member `(a, m)` of the family `(2am+1)^x + (2m)^y = (2am-1)^z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instance {
    a: u64,
    m: u64,
}

impl Instance {
    pub fn new(a: u64, m: u64) -> Result<Self> {
        if a < 2 {
            return Err(Error::InvalidInstance(format!("a must exceed 1, got {a}")));
        }
        if m < 1 {
            return Err(Error::InvalidInstance("m must be positive".into()));
        }
        // Keeps 2am+1 representable for the machine-word fast paths.
        if a.checked_mul(m).and_then(|am| am.checked_mul(2)).and_then(|v| v.checked_add(1)).is_none() {
            return Err(Error::InvalidInstance(format!("2am+1 overflows for a={a}, m={m}")));
        }
        Ok(Self { a, m })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `(A, B, C) = (2am+1, 2m, 2am-1)` as machine words.
    pub fn terms_u64(&self) -> (u64, u64, u64) {
        let two_am = 2 * self.a * self.m;
        (two_am + 1, 2 * self.m, two_am - 1)
    }

    /// `(A, B, C) = (2am+1, 2m, 2am-1)`.
    pub fn terms(&self) -> (BigUint, BigUint, BigUint) {
        let (a, b, c) = self.terms_u64();
        (a.into(), b.into(), c.into())
    }
}

/// Positive exponents `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentTriple {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl ExponentTriple {
    pub fn new(x: u32, y: u32, z: u32) -> Result<Self> {
        if x == 0 || y == 0 || z == 0 {
            return Err(Error::InvalidExponents(format!("({x}, {y}, {z}) must all be positive")));
        }
        Ok(Self { x, y, z })
    }
}

/// `(2am+1)^x + (2m)^y = (2am-1)^z`, checked exactly.
pub fn check_family(inst: Instance, e: ExponentTriple) -> bool {
    let (a, b, c) = inst.terms();
    cmp_powersum(&a, e.x, &b, e.y, &c, e.z) == Ordering::Equal
}

/// A record `(a, m, x, y, z)` that has passed an exact check.
///
/// The only constructor is [`Solution::verify`], so a value of this type is
/// always a genuine solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    instance: Instance,
    exponents: ExponentTriple,
}

impl Solution {
    pub fn verify(instance: Instance, exponents: ExponentTriple) -> Option<Self> {
        check_family(instance, exponents).then_some(Self { instance, exponents })
    }

    /// Convenience: validate the raw tuple and verify it.
    pub fn from_tuple(a: u64, m: u64, x: u32, y: u32, z: u32) -> Result<Option<Self>> {
        Ok(Self::verify(Instance::new(a, m)?, ExponentTriple::new(x, y, z)?))
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn exponents(&self) -> ExponentTriple {
        self.exponents
    }

    /// `[a, m, x, y, z]`.
    pub fn tuple(&self) -> [u64; 5] {
        let e = self.exponents;
        [self.instance.a, self.instance.m, e.x as u64, e.y as u64, e.z as u64]
    }

    /// Re-run the exact check; used when a solution crosses a serialization boundary.
    pub fn recheck(&self) -> bool {
        check_family(self.instance, self.exponents)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, m, x, y, z] = self.tuple();
        write!(f, "(a, m, x, y, z) = ({a}, {m}, {x}, {y}, {z})")
    }
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.tuple().serialize(s)
    }
}

/// Bases `(A, B, C)` of a generic equation `A^x + B^y = C^z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumEquation {
    a: BigUint,
    b: BigUint,
    c: BigUint,
}

impl PowerSumEquation {
    /// Rejects bases `<= 1` and triples that are not pairwise coprime.
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>, c: impl Into<BigUint>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let one = BigUint::one();
        if a <= one || b <= one || c <= one {
            return Err(Error::InvalidInstance(format!("bases must exceed 1: ({a}, {b}, {c})")));
        }
        if !a.gcd(&b).is_one() || !a.gcd(&c).is_one() || !b.gcd(&c).is_one() {
            return Err(Error::NotCoprime(a.to_string(), b.to_string(), c.to_string()));
        }
        Ok(Self { a, b, c })
    }

    pub fn from_instance(inst: Instance) -> Self {
        let (a, b, c) = inst.terms();
        // gcd(2am±1, 2m) = 1 and gcd(A, C) | 2 with both odd.
        Self { a, b, c }
    }

    pub fn bases(&self) -> (&BigUint, &BigUint, &BigUint) {
        (&self.a, &self.b, &self.c)
    }
}

/// `A^x + B^y = C^z`, exactly.
pub fn check_generic(eq: &PowerSumEquation, e: ExponentTriple) -> bool {
    cmp_powersum(&eq.a, e.x, &eq.b, e.y, &eq.c, e.z) == Ordering::Equal
}

/// `P = C^Z + A^X`, `Q = C^Z - A^X` for the even-exponent case `x = 2X`, `z = 2Z`.
///
/// When `(2X, y, 2Z)` solves the instance, `P * Q = (2m)^y`.
pub fn pq_split(inst: Instance, big_x: u32, big_z: u32) -> Result<(BigUint, BigUint)> {
    let (a, _, c) = inst.terms();
    if big_x == 0 || big_z == 0 || cmp_pow(&c, big_z, &a, big_x) != Ordering::Greater {
        return Err(Error::NegativeQ { a: inst.a, m: inst.m, big_x, big_z });
    }
    let cz = ipow(&c, big_z);
    let ax = ipow(&a, big_x);
    Ok((&cz + &ax, cz - ax))
}
