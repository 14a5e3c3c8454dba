//! Exhaustive searches over finite boxes.

mod aux;
mod checkpoint;
mod corollary;
mod report;
mod sieve;
mod theorem;
mod units;

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::arith::cmp_powersum;
use crate::model::{ExponentTriple, Instance, Solution};
use crate::{Error, Result};

pub use aux::{verify_aux, AuxId, AuxQuery, AuxReport, TrivialFamily};
pub use checkpoint::{CheckpointRecord, CheckpointState, CheckpointWriter};
pub use corollary::corollary_search;
pub use report::{ReportKind, SearchReport};
pub use sieve::{ModularSieve, SIEVE_PRIMES};
pub use theorem::{theorem_search, SearchOptions};
pub use units::{partition_work, UnitScan, WorkUnit};

/// Inclusive ranges for every variable of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub a: RangeInclusive<u64>,
    pub m: RangeInclusive<u64>,
    pub x: RangeInclusive<u32>,
    pub y: RangeInclusive<u32>,
    pub z: RangeInclusive<u32>,
}

impl SearchBox {
    pub fn new(
        a: RangeInclusive<u64>,
        m: RangeInclusive<u64>,
        x: RangeInclusive<u32>,
        y: RangeInclusive<u32>,
        z: RangeInclusive<u32>,
    ) -> Result<Self> {
        if *a.start() < 2 {
            return Err(Error::InvalidBox(format!("a must start at 2 or above, got {}", a.start())));
        }
        if *m.start() < 1 || *x.start() < 1 || *y.start() < 1 || *z.start() < 1 {
            return Err(Error::InvalidBox("m, x, y, z must start at 1 or above".into()));
        }
        Ok(Self { a, m, x, y, z })
    }

    /// `a in [2, a_max]`, `m in [1, m_max]`, all exponents in `[1, exp_max]`.
    pub fn cube(a_max: u64, m_max: u64, exp_max: u32) -> Result<Self> {
        Self::new(2..=a_max, 1..=m_max, 1..=exp_max, 1..=exp_max, 1..=exp_max)
    }
}

/// Every solution in the box, found by exact comparison alone (no filters).
pub fn oracle_search(sbox: &SearchBox) -> Result<Vec<Solution>> {
    let pairs: Vec<(u64, u64)> = sbox.a.clone().flat_map(|a| sbox.m.clone().map(move |m| (a, m))).collect();
    let per_pair: Vec<Vec<Solution>> = pairs
        .par_iter()
        .map(|&(a, m)| -> Result<Vec<Solution>> {
            let inst = Instance::new(a, m)?;
            let (big_a, big_b, big_c) = inst.terms();
            let mut out = Vec::new();
            for x in sbox.x.clone() {
                for y in sbox.y.clone() {
                    for z in sbox.z.clone() {
                        match cmp_powersum(&big_a, x, &big_b, y, &big_c, z) {
                            Ordering::Equal => {
                                let e = ExponentTriple::new(x, y, z)?;
                                out.push(Solution::verify(inst, e).expect("exact equality just checked"));
                            }
                            // C >= 3, so C^z only grows from here.
                            Ordering::Less => break,
                            Ordering::Greater => {}
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<Solution> = per_pair.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let found = oracle_search(&SearchBox::cube(12, 12, 16).unwrap()).unwrap();
        let tuples: Vec<[u64; 5]> = found.iter().map(|s| s.tuple()).collect();
        assert_eq!(tuples, vec![[2, 1, 1, 2, 2], [2, 1, 2, 1, 3]]);
        let sbox = SearchBox::new(3..=12, 1..=12, 1..=16, 1..=16, 1..=16).unwrap();
        assert!(oracle_search(&sbox).unwrap().is_empty());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = SearchBox::new(5..=4, 1..=3, 1..=3, 1..=3, 1..=3).unwrap();
        assert!(oracle_search(&empty).unwrap().is_empty());
    }

    #[test]
    fn box_validation() {
        assert!(SearchBox::new(1..=3, 1..=3, 1..=3, 1..=3, 1..=3).is_err());
        assert!(SearchBox::new(2..=3, 0..=3, 1..=3, 1..=3, 1..=3).is_err());
        assert!(SearchBox::new(2..=3, 1..=3, 1..=3, 1..=3, 0..=3).is_err());
    }
}
