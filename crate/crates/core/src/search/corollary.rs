//! `b^x + 2^y = (b-2)^z` with `b` odd: the family at `m = 1`, `a = (b-1)/2`.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::arith::exact_log;
use crate::model::{ExponentTriple, Instance, Solution};
use crate::{Error, Result};

/// Every solution with odd `b <= b_max` and `x, y, z <= exp_cap`. Solutions
/// are returned as family members `(a, 1, x, y, z)` with `b = 2a + 1`.
///
/// For each `(b, x, y)` the sum is tested for being an exact power of `b - 2`,
/// so no `z` is ever ruled out by a floating-point estimate.
pub fn corollary_search(b_max: u64, exp_cap: u32) -> Result<Vec<Solution>> {
    if b_max.is_multiple_of(2) || b_max < 3 {
        return Err(Error::EvenBMax(b_max));
    }
    if exp_cap == 0 {
        return Err(Error::InvalidBox("exponent cap must be positive".into()));
    }
    // b = 3 gives b - 2 = 1, whose powers never exceed the left side.
    let bs: Vec<u64> = (5..=b_max).step_by(2).collect();
    let per_b: Vec<Vec<Solution>> = bs
        .par_iter()
        .map(|&b| {
            let inst = Instance::new((b - 1) / 2, 1)?;
            let base = BigUint::from(b - 2);
            let b_pows = powers(b, exp_cap);
            let two_pows = powers(2, exp_cap);
            let mut out = Vec::new();
            for (x, bx) in b_pows.iter().enumerate() {
                for (y, ty) in two_pows.iter().enumerate() {
                    let sum = bx + ty;
                    if let Some(z) = exact_log(&sum, &base) {
                        if z >= 1 && z <= exp_cap {
                            let e = ExponentTriple::new(x as u32 + 1, y as u32 + 1, z)?;
                            out.push(Solution::verify(inst, e).expect("exact power just found"));
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<Solution> = per_b.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// `[base^1, ..., base^cap]`.
fn powers(base: u64, cap: u32) -> Vec<BigUint> {
    let base = BigUint::from(base);
    let mut out = Vec::with_capacity(cap as usize);
    let mut acc = base.clone();
    for _ in 0..cap {
        out.push(acc.clone());
        acc *= &base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b_tuples(sols: &[Solution]) -> Vec<[u64; 4]> {
        sols.iter()
            .map(|s| {
                let t = s.tuple();
                [2 * t[0] + 1, t[2], t[3], t[4]]
            })
            .collect()
    }

    #[test]
    fn examples() {
        let found = corollary_search(101, 30).unwrap();
        assert_eq!(b_tuples(&found), vec![[5, 1, 2, 2], [5, 2, 1, 3]]);
        assert!(corollary_search(3, 10).unwrap().is_empty());
        assert!(matches!(corollary_search(10, 10), Err(Error::EvenBMax(10))));
    }
}
