//! Brute-force verifiers for the auxiliary equations the main argument leans on.
//!
//! Each id enumerates its equation over a finite box and compares the result
//! with the known solution set.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::One;
use serde::Serialize;

use crate::arith::{cmp_powersum, exact_log};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxId {
    /// `5^x + 2 = 3^z`.
    Na53,
    /// `3^Z - 5^X = 2`, enumerated from the `Z` side.
    Pillai35,
    /// `U^2 + 2^k = V^l`, `gcd(U, V) = 1`, `l >= 3`.
    Le,
    /// `x^2 + y^k = z^4`, `gcd(x, y) = 1`, `k >= 4`.
    Terai4,
    /// `(n+2)^x + (n+1)^y = n^z`.
    Fhyz,
    /// `(tB-1)^x + B^y = (tB+1)^z` with `B` even: only the trivial families.
    TrivialEq1,
}

impl AuxId {
    pub const ALL: [AuxId; 6] =
        [AuxId::Na53, AuxId::Pillai35, AuxId::Le, AuxId::Terai4, AuxId::Fhyz, AuxId::TrivialEq1];

    pub fn name(self) -> &'static str {
        match self {
            AuxId::Na53 => "na53",
            AuxId::Pillai35 => "pillai35",
            AuxId::Le => "le",
            AuxId::Terai4 => "terai4",
            AuxId::Fhyz => "fhyz",
            AuxId::TrivialEq1 => "trivial-eq1",
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            AuxId::Na53 => "5^x + 2 = 3^z",
            AuxId::Pillai35 => "3^Z - 5^X = 2",
            AuxId::Le => "U^2 + 2^k = V^l, gcd(U, V) = 1, l >= 3",
            AuxId::Terai4 => "x^2 + y^k = z^4, gcd(x, y) = 1, k >= 4",
            AuxId::Fhyz => "(n+2)^x + (n+1)^y = n^z",
            AuxId::TrivialEq1 => "(tB-1)^x + B^y = (tB+1)^z, B even",
        }
    }

    /// The known solutions, in the order the verifier reports tuples.
    /// Empty for `trivial-eq1`, whose check is classification instead.
    pub fn expected(self) -> Vec<Vec<u64>> {
        match self {
            AuxId::Na53 | AuxId::Pillai35 => vec![vec![2, 3]],
            AuxId::Le => vec![vec![5, 3, 1, 3], vec![7, 3, 5, 4], vec![11, 5, 2, 3]],
            AuxId::Terai4 | AuxId::TrivialEq1 => vec![],
            AuxId::Fhyz => vec![vec![3, 1, 1, 2]],
        }
    }
}

impl fmt::Display for AuxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AuxId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AuxId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| Error::UnknownAuxId(s.to_string()))
    }
}

/// A verifier and its box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxQuery {
    Na53 { x_max: u32, z_max: u32 },
    Pillai35 { x_max: u32, z_max: u32 },
    Le { u_max: u64, v_max: u64, k_max: u32, l_max: u32 },
    Terai4 { z_max: u64, k_min: u32, k_max: u32 },
    Fhyz { n_max: u64, exp_max: u32 },
    TrivialEq1 { b_max: u64, t_max: u64, exp_max: u32 },
}

impl AuxQuery {
    /// The standard box for each id.
    pub fn default_for(id: AuxId) -> Self {
        match id {
            AuxId::Na53 => AuxQuery::Na53 { x_max: 5000, z_max: 5000 },
            AuxId::Pillai35 => AuxQuery::Pillai35 { x_max: 5000, z_max: 5000 },
            AuxId::Le => AuxQuery::Le { u_max: 200, v_max: 200, k_max: 40, l_max: 20 },
            AuxId::Terai4 => AuxQuery::Terai4 { z_max: 100, k_min: 4, k_max: 20 },
            AuxId::Fhyz => AuxQuery::Fhyz { n_max: 200, exp_max: 30 },
            AuxId::TrivialEq1 => AuxQuery::TrivialEq1 { b_max: 16, t_max: 64, exp_max: 16 },
        }
    }

    pub fn id(&self) -> AuxId {
        match self {
            AuxQuery::Na53 { .. } => AuxId::Na53,
            AuxQuery::Pillai35 { .. } => AuxId::Pillai35,
            AuxQuery::Le { .. } => AuxId::Le,
            AuxQuery::Terai4 { .. } => AuxId::Terai4,
            AuxQuery::Fhyz { .. } => AuxId::Fhyz,
            AuxQuery::TrivialEq1 { .. } => AuxId::TrivialEq1,
        }
    }

    fn describe(&self) -> String {
        match *self {
            AuxQuery::Na53 { x_max, z_max } => format!("x <= {x_max}, z <= {z_max}"),
            AuxQuery::Pillai35 { x_max, z_max } => format!("X <= {x_max}, Z <= {z_max}"),
            AuxQuery::Le { u_max, v_max, k_max, l_max } => {
                format!("U <= {u_max}, V <= {v_max}, k <= {k_max}, 3 <= l <= {l_max}")
            }
            AuxQuery::Terai4 { z_max, k_min, k_max } => format!("z <= {z_max}, {k_min} <= k <= {k_max}"),
            AuxQuery::Fhyz { n_max, exp_max } => format!("2 <= n <= {n_max}, x, y, z <= {exp_max}"),
            AuxQuery::TrivialEq1 { b_max, t_max, exp_max } => {
                format!("B even <= {b_max}, t <= {t_max}, x, y, z <= {exp_max}")
            }
        }
    }
}

/// The catalogued solution families of `(tB-1)^x + B^y = (tB+1)^z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TrivialFamily {
    /// `B = 2`, `t = 1`: `(i, 1, 1)` and `(j, 3, 2)`.
    BaseOne,
    /// `t = B^k / 4`, `k >= 1`: `(2, k+1, 2)`.
    PowerT,
    /// `B = 2`: `(1, 1, 1)`.
    Linear,
    /// `B = 2`, `t = 45`: `(1, 13, 2)`.
    Sporadic,
}

impl TrivialFamily {
    pub fn classify(b: u64, t: u64, x: u64, y: u64, z: u64) -> Option<Self> {
        if b == 2 && t == 1 && ((y == 1 && z == 1) || (y == 3 && z == 2)) {
            return Some(TrivialFamily::BaseOne);
        }
        if x == 2 && z == 2 && y >= 2 {
            // t = B^k / 4 with k = y - 1.
            let bk = (b as u128).checked_pow((y - 1) as u32);
            if bk.is_some_and(|bk| bk == 4 * t as u128) {
                return Some(TrivialFamily::PowerT);
            }
        }
        if b == 2 && (x, y, z) == (1, 1, 1) {
            return Some(TrivialFamily::Linear);
        }
        if b == 2 && t == 45 && (x, y, z) == (1, 13, 2) {
            return Some(TrivialFamily::Sporadic);
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxReport {
    pub id: String,
    pub equation: &'static str,
    pub region: String,
    pub solutions: Vec<Vec<u64>>,
    pub expected: Vec<Vec<u64>>,
    /// `trivial-eq1` only: solution tuples with their family.
    pub classified: Vec<(Vec<u64>, TrivialFamily)>,
    /// `trivial-eq1` only: solutions outside every family.
    pub unclassified: Vec<Vec<u64>>,
    pub pass: bool,
}

pub fn verify_aux(query: &AuxQuery) -> AuxReport {
    let id = query.id();
    let mut classified = Vec::new();
    let mut unclassified = Vec::new();
    let solutions = match *query {
        AuxQuery::Na53 { x_max, z_max } => na53(x_max, z_max),
        AuxQuery::Pillai35 { x_max, z_max } => pillai35(x_max, z_max),
        AuxQuery::Le { u_max, v_max, k_max, l_max } => le(u_max, v_max, k_max, l_max),
        AuxQuery::Terai4 { z_max, k_min, k_max } => terai4(z_max, k_min, k_max),
        AuxQuery::Fhyz { n_max, exp_max } => fhyz(n_max, exp_max),
        AuxQuery::TrivialEq1 { b_max, t_max, exp_max } => {
            let sols = trivial_eq1(b_max, t_max, exp_max);
            for s in &sols {
                match TrivialFamily::classify(s[0], s[1], s[2], s[3], s[4]) {
                    Some(f) => classified.push((s.clone(), f)),
                    None => unclassified.push(s.clone()),
                }
            }
            sols
        }
    };
    let expected = id.expected();
    let pass = match id {
        AuxId::TrivialEq1 => unclassified.is_empty(),
        _ => solutions == expected,
    };
    AuxReport {
        id: id.name().to_string(),
        equation: id.equation(),
        region: query.describe(),
        solutions,
        expected,
        classified,
        unclassified,
        pass,
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `(x, z)` with `5^x + 2 = 3^z`.
fn na53(x_max: u32, z_max: u32) -> Vec<Vec<u64>> {
    let (three, five) = (big(3), big(5));
    let mut out = Vec::new();
    let mut p = big(1);
    for x in 1..=x_max {
        p *= &five;
        if let Some(z) = exact_log(&(&p + 2u32), &three) {
            if z >= 1 && z <= z_max {
                out.push(vec![x as u64, z as u64]);
            }
        }
    }
    out
}

/// `(X, Z)` with `3^Z - 5^X = 2`.
fn pillai35(x_max: u32, z_max: u32) -> Vec<Vec<u64>> {
    let (three, five) = (big(3), big(5));
    let mut out = Vec::new();
    let mut p = big(1);
    for z in 1..=z_max {
        p *= &three;
        if p <= big(2) {
            continue;
        }
        if let Some(x) = exact_log(&(&p - 2u32), &five) {
            if x >= 1 && x <= x_max {
                out.push(vec![x as u64, z as u64]);
            }
        }
    }
    out
}

/// `(U, V, k, l)` with `U^2 + 2^k = V^l`, sorted.
fn le(u_max: u64, v_max: u64, k_max: u32, l_max: u32) -> Vec<Vec<u64>> {
    let ceiling = (u_max as u128).pow(2) + (1u128 << k_max);
    let mut out = Vec::new();
    for v in 2..=v_max {
        for l in 3..=l_max {
            let vl = match (v as u128).checked_pow(l) {
                Some(p) if p <= ceiling => p,
                _ => break,
            };
            for k in 1..=k_max {
                let two_k = 1u128 << k;
                if two_k >= vl {
                    break;
                }
                let sq = vl - two_k;
                let u = sq.sqrt();
                if u * u == sq && u >= 1 && u <= u_max as u128 && (u as u64).gcd(&v) == 1 {
                    out.push(vec![u as u64, v, k as u64, l as u64]);
                }
            }
        }
    }
    out.sort();
    out
}

/// `(x, y, z, k)` with `x^2 + y^k = z^4`, `gcd(x, y) = 1`.
fn terai4(z_max: u64, k_min: u32, k_max: u32) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for z in 2..=z_max {
        let z4 = (z as u128).pow(4);
        for k in k_min..=k_max {
            let mut y = 1u64;
            while let Some(yk) = (y as u128).checked_pow(k).filter(|&p| p < z4) {
                let sq = z4 - yk;
                let x = sq.sqrt();
                if x * x == sq && x >= 1 && (x as u64).gcd(&y) == 1 {
                    out.push(vec![x as u64, y, z, k as u64]);
                }
                y += 1;
            }
        }
    }
    out.sort();
    out
}

/// `(n, x, y, z)` with `(n+2)^x + (n+1)^y = n^z`.
fn fhyz(n_max: u64, exp_max: u32) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    // n = 1 would need a sum of powers to equal 1.
    for n in 2..=n_max {
        let base = big(n);
        let (a, b) = (big(n + 2), big(n + 1));
        let mut ax = BigUint::one();
        for x in 1..=exp_max {
            ax *= &a;
            let mut by = BigUint::one();
            for y in 1..=exp_max {
                by *= &b;
                if let Some(z) = exact_log(&(&ax + &by), &base) {
                    if z >= 1 && z <= exp_max {
                        out.push(vec![n, x as u64, y as u64, z as u64]);
                    }
                }
            }
        }
    }
    out
}

/// `(B, t, x, y, z)` with `(tB-1)^x + B^y = (tB+1)^z`.
fn trivial_eq1(b_max: u64, t_max: u64, exp_max: u32) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for b in (2..=b_max).step_by(2) {
        for t in 1..=t_max {
            let (lo, mid, hi) = (big(t * b - 1), big(b), big(t * b + 1));
            for x in 1..=exp_max {
                for y in 1..=exp_max {
                    for z in 1..=exp_max {
                        match cmp_powersum(&lo, x, &mid, y, &hi, z) {
                            Ordering::Equal => out.push(vec![b, t, x as u64, y as u64, z as u64]),
                            Ordering::Less => break,
                            Ordering::Greater => {}
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        for id in AuxId::ALL {
            assert_eq!(id.name().parse::<AuxId>().unwrap(), id);
        }
        assert!(matches!("nope".parse::<AuxId>(), Err(Error::UnknownAuxId(_))));
    }

    #[test]
    fn small_boxes() {
        assert_eq!(na53(50, 200), vec![vec![2, 3]]);
        assert_eq!(pillai35(100, 100), vec![vec![2, 3]]);
        assert_eq!(fhyz(20, 10), vec![vec![3, 1, 1, 2]]);
        assert_eq!(le(20, 10, 10, 6), vec![vec![5, 3, 1, 3], vec![7, 3, 5, 4], vec![11, 5, 2, 3]]);
    }

    #[test]
    fn terai4_finds_the_coprime_exception() {
        // 7^2 + 2^5 = 3^4 with gcd(7, 2) = 1 and k = 5.
        assert_eq!(terai4(30, 4, 8), vec![vec![7, 2, 3, 5]]);
        let r = verify_aux(&AuxQuery::default_for(AuxId::Terai4));
        assert_eq!(r.solutions, vec![vec![7, 2, 3, 5]]);
        assert!(!r.pass);
    }

    #[test]
    fn trivial_families() {
        assert_eq!(TrivialFamily::classify(2, 1, 7, 1, 1), Some(TrivialFamily::BaseOne));
        assert_eq!(TrivialFamily::classify(2, 1, 4, 3, 2), Some(TrivialFamily::BaseOne));
        assert_eq!(TrivialFamily::classify(4, 4, 2, 3, 2), Some(TrivialFamily::PowerT));
        assert_eq!(TrivialFamily::classify(2, 9, 1, 1, 1), Some(TrivialFamily::Linear));
        assert_eq!(TrivialFamily::classify(2, 45, 1, 13, 2), Some(TrivialFamily::Sporadic));
        assert_eq!(TrivialFamily::classify(4, 3, 1, 1, 1), None);
        // Each listed family really solves the equation.
        for (b, t, x, y, z) in [
            (2u64, 1u64, 7u32, 1u32, 1u32),
            (2, 1, 4, 3, 2),
            (4, 4, 2, 3, 2),
            (2, 9, 1, 1, 1),
            (2, 45, 1, 13, 2),
            (8, 16, 2, 3, 2),
        ] {
            assert_eq!(cmp_powersum(&big(t * b - 1), x, &big(b), y, &big(t * b + 1), z), Ordering::Equal);
        }
    }

    #[test]
    fn trivial_scan_small() {
        let r = verify_aux(&AuxQuery::TrivialEq1 { b_max: 4, t_max: 8, exp_max: 6 });
        assert!(r.pass);
        assert!(!r.classified.is_empty());
        assert!(r.solutions.contains(&vec![4, 4, 2, 3, 2]));
    }
}
