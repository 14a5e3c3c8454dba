//! Exact integer primitives shared by every other module.
//!
//! Bases are unbounded [`BigUint`]s; exponents are machine words (`u32`), which
//! comfortably covers the search region (x stays below 22 000).

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Slack, in natural-log units, inside which the float prefilter of
/// [`cmp_powersum`] refuses to decide and defers to exact arithmetic.
pub const LOG_PREFILTER_MARGIN: f64 = 2.0;
/// Relative slack added to [`LOG_PREFILTER_MARGIN`] for very large magnitudes.
pub const LOG_PREFILTER_RELATIVE: f64 = 1e-6;

/// `base^exp`, exactly. `exp = 0` yields 1.
pub fn ipow(base: &BigUint, exp: u32) -> BigUint {
    num_traits::pow(base.clone(), exp as usize)
}

/// The exponent of `p` in the factorisation of `n` (sign ignored).
///
/// `p` is not checked for primality; it only has to be at least 2.
pub fn vp(p: u64, n: &BigInt) -> Result<u32> {
    if p < 2 {
        return Err(Error::BadPrime(p));
    }
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigUint::from(p);
    let mut rest = n.magnitude().clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// [`vp`] on machine words. Panics on `n = 0` or `p < 2`.
pub fn vp_u64(p: u64, mut n: u64) -> u32 {
    assert!(p >= 2 && n != 0, "vp_u64 needs p >= 2 and n != 0");
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// `base^exp mod modulus`, reduced into `[0, modulus)` also for negative bases.
pub fn modpow(base: &BigInt, exp: u64, modulus: &BigInt) -> Result<BigInt> {
    if modulus < &BigInt::from(2) {
        return Err(Error::BadModulus(modulus.to_string()));
    }
    let r = base.modpow(&BigInt::from(exp), modulus);
    Ok(if r.sign() == Sign::Minus { r + modulus } else { r })
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Machine-word modular exponentiation, for the sieves. `m` must be nonzero.
pub fn modpow_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Natural logarithm of a big integer in double precision.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit prefix fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn undecided(lhs: f64, rhs: f64, slack: f64) -> bool {
    let margin = LOG_PREFILTER_MARGIN.max(LOG_PREFILTER_RELATIVE * lhs.abs().max(rhs.abs()));
    (lhs - rhs).abs() < margin + slack
}

/// Compare `a^x` against `c^z`, exactly.
pub fn cmp_pow(a: &BigUint, x: u32, c: &BigUint, z: u32) -> Ordering {
    let lx = x as f64 * ln_big(a);
    let lz = z as f64 * ln_big(c);
    if !undecided(lx, lz, 0.0) {
        return lx.partial_cmp(&lz).expect("finite logs");
    }
    ipow(a, x).cmp(&ipow(c, z))
}

/// Compare `A^x + B^y` against `C^z`.
///
/// A double-precision comparison of log sizes settles the question when the two
/// sides are far apart; anything within the margin is expanded exactly, so the
/// answer always agrees with full big-integer evaluation.
pub fn cmp_powersum(a: &BigUint, x: u32, b: &BigUint, y: u32, c: &BigUint, z: u32) -> Ordering {
    let lx = x as f64 * ln_big(a);
    let ly = y as f64 * ln_big(b);
    let lz = z as f64 * ln_big(c);
    // log(A^x + B^y) lies in [max, max + ln 2].
    let lo = lx.max(ly);
    let hi = lo + std::f64::consts::LN_2;
    let margin = LOG_PREFILTER_MARGIN.max(LOG_PREFILTER_RELATIVE * hi.abs().max(lz.abs()));
    if lz > hi + margin {
        return Ordering::Less;
    }
    if lz < lo - margin {
        return Ordering::Greater;
    }
    (ipow(a, x) + ipow(b, y)).cmp(&ipow(c, z))
}

/// If `n = base^k` for some `k >= 0`, returns `k`. Exact; `base` must exceed 1.
pub fn exact_log(n: &BigUint, base: &BigUint) -> Option<u32> {
    assert!(base > &BigUint::one(), "exact_log needs base > 1");
    if n.is_zero() {
        return None;
    }
    let mut rest = n.clone();
    let mut k = 0;
    while !rest.is_one() {
        let (q, r) = rest.div_rem(base);
        if !r.is_zero() {
            return None;
        }
        rest = q;
        k += 1;
    }
    Some(k)
}

/// Prime factorisation by trial division, ascending primes.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    n >= 2 && factor_u64(n) == [(n, 1)]
}

/// All primes below `limit`, ascending.
pub fn primes_below(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit];
    let mut out = Vec::new();
    for i in 2..limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j < limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn ipow_examples() {
        assert_eq!(ipow(&big(3), 3), big(27));
        assert_eq!(ipow(&big(5), 0), big(1));
        assert_eq!(ipow(&big(2), 13), big(8192));
    }

    #[test]
    fn vp_examples_and_errors() {
        assert_eq!(vp(2, &BigInt::from(8)).unwrap(), 3);
        assert_eq!(vp(3, &BigInt::from(45)).unwrap(), 2);
        assert_eq!(vp(5, &BigInt::from(7)).unwrap(), 0);
        assert_eq!(vp(3, &BigInt::from(-18)).unwrap(), 2);
        assert!(matches!(vp(2, &BigInt::zero()), Err(Error::ZeroValuation)));
        assert!(matches!(vp(1, &BigInt::from(4)), Err(Error::BadPrime(1))));
    }

    #[test]
    fn modpow_examples() {
        let m = |b: i64, e, n: i64| modpow(&BigInt::from(b), e, &BigInt::from(n)).unwrap();
        assert_eq!(m(5, 2, 4), BigInt::from(1));
        assert_eq!(m(3, 3, 10), BigInt::from(7));
        assert_eq!(m(7, 0, 5), BigInt::from(1));
        assert_eq!(m(-2, 3, 5), BigInt::from(2));
        assert!(modpow(&BigInt::from(3), 2, &BigInt::from(1)).is_err());
        assert_eq!(modpow_u64(3, 3, 10), 7);
    }

    #[test]
    fn cmp_powersum_examples() {
        assert_eq!(cmp_powersum(&big(5), 2, &big(2), 1, &big(3), 3), Ordering::Equal);
        assert_eq!(cmp_powersum(&big(5), 1, &big(2), 1, &big(3), 1), Ordering::Greater);
        assert_eq!(cmp_powersum(&big(3), 1, &big(2), 1, &big(5), 2), Ordering::Less);
    }

    #[test]
    fn cmp_powersum_near_miss_at_scale() {
        // 3^5000 vs 5^x + 2 for the x that brackets it: decided exactly.
        let z = 5000;
        let x = (z as f64 * 3f64.ln() / 5f64.ln()).floor() as u32;
        let expect = (ipow(&big(5), x) + big(2)).cmp(&ipow(&big(3), z));
        assert_eq!(cmp_powersum(&big(5), x, &big(2), 1, &big(3), z), expect);
    }

    #[test]
    fn exact_log_cases() {
        assert_eq!(exact_log(&big(81), &big(3)), Some(4));
        assert_eq!(exact_log(&big(1), &big(7)), Some(0));
        assert_eq!(exact_log(&big(82), &big(3)), None);
        assert_eq!(exact_log(&big(0), &big(3)), None);
    }

    #[test]
    fn ln_big_matches_for_large_values() {
        let n = ipow(&big(7), 2000);
        let expect = 2000.0 * 7f64.ln();
        assert!((ln_big(&n) - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(primes_below(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(!is_prime_u64(5043));
        assert!(is_prime_u64(5039));
    }

    proptest! {
        #[test]
        fn cmp_powersum_agrees_with_expansion(
            a in 2u64..40, x in 1u32..25, b in 2u64..40, y in 1u32..25, c in 2u64..40, z in 1u32..25,
        ) {
            let exact = (ipow(&big(a), x) + ipow(&big(b), y)).cmp(&ipow(&big(c), z));
            prop_assert_eq!(cmp_powersum(&big(a), x, &big(b), y, &big(c), z), exact);
        }

        #[test]
        fn vp_of_constructed_power(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), k in 0u32..=64, q in 1u64..10_000) {
            prop_assume!(q % p != 0);
            let n = BigInt::from(ipow(&big(p), k) * big(q));
            prop_assert_eq!(vp(p, &n).unwrap(), k);
        }

        #[test]
        fn modpow_matches_reduced_power(b in -50i64..50, e in 0u32..40, m in 2i64..1000) {
            let full = BigInt::from(b).pow(e);
            let expect = ((full % m) + m) % m;
            prop_assert_eq!(modpow(&BigInt::from(b), e as u64, &BigInt::from(m)).unwrap(), expect);
        }
    }
}
