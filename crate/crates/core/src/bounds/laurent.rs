//! Heights and the lower bound for a linear form in two logarithms.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::One;

use crate::arith::{cmp_pow, factor_u64};
use crate::model::{ExponentTriple, Instance};
use crate::{Error, Result};

/// Leading constant of the two-logarithm bound, 25.2.
pub const LAURENT_FACTOR: Ratio<u64> = Ratio::new_raw(126, 5);
/// Additive shift inside the squared logarithm, 0.38.
pub const LAURENT_SHIFT: f64 = 0.38;
/// Floor of the squared term, 10.
pub const LAURENT_FLOOR: f64 = 10.0;

/// Absolute logarithmic height of a positive rational: `log max(p, q)` in lowest terms.
pub fn log_height(r: Ratio<u64>) -> Result<f64> {
    if *r.numer() == 0 {
        return Err(Error::InvalidLinearForm("height of a non-positive rational".into()));
    }
    Ok(((*r.numer()).max(*r.denom()) as f64).ln())
}

/// Signed prime-exponent vector of `p/q`.
fn exponent_vector(r: Ratio<u64>) -> Vec<(u64, i64)> {
    let mut v: Vec<(u64, i64)> = factor_u64(*r.numer()).into_iter().map(|(p, e)| (p, e as i64)).collect();
    v.extend(factor_u64(*r.denom()).into_iter().map(|(p, e)| (p, -(e as i64))));
    v.sort_unstable();
    v
}

/// Rationals `> 1` are multiplicatively dependent iff their exponent vectors
/// are proportional.
fn independent(r1: Ratio<u64>, r2: Ratio<u64>) -> bool {
    let v1 = exponent_vector(r1);
    let v2 = exponent_vector(r2);
    let primes: Vec<u64> = {
        let mut p: Vec<u64> = v1.iter().chain(&v2).map(|&(p, _)| p).collect();
        p.sort_unstable();
        p.dedup();
        p
    };
    let get = |v: &[(u64, i64)], p: u64| v.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e);
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i..] {
            if get(&v1, p) as i128 * get(&v2, q) as i128 != get(&v1, q) as i128 * get(&v2, p) as i128 {
                return true;
            }
        }
    }
    false
}

/// No positive `i, j` with `m^i = n^j`.
pub fn mult_indep(m: u64, n: u64) -> bool {
    assert!(m > 1 && n > 1, "mult_indep needs both arguments > 1");
    independent(Ratio::from_integer(m), Ratio::from_integer(n))
}

/// `Λ = β2 log α2 − β1 log α1` with rational `α1, α2 > 1`, multiplicatively independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearForm {
    alpha1: Ratio<u64>,
    alpha2: Ratio<u64>,
    beta1: u64,
    beta2: u64,
}

impl LinearForm {
    pub fn new(alpha1: Ratio<u64>, alpha2: Ratio<u64>, beta1: u64, beta2: u64) -> Result<Self> {
        let one = Ratio::one();
        if alpha1 <= one || alpha2 <= one {
            return Err(Error::InvalidLinearForm(format!("alphas must exceed 1: {alpha1}, {alpha2}")));
        }
        if beta1 == 0 || beta2 == 0 {
            return Err(Error::InvalidLinearForm("betas must be positive".into()));
        }
        if !independent(alpha1, alpha2) {
            return Err(Error::InvalidLinearForm(format!("{alpha1} and {alpha2} are multiplicatively dependent")));
        }
        Ok(Self { alpha1, alpha2, beta1, beta2 })
    }

    pub fn integers(alpha1: u64, alpha2: u64, beta1: u64, beta2: u64) -> Result<Self> {
        Self::new(Ratio::from_integer(alpha1), Ratio::from_integer(alpha2), beta1, beta2)
    }

    pub fn alphas(&self) -> (Ratio<u64>, Ratio<u64>) {
        (self.alpha1, self.alpha2)
    }

    pub fn betas(&self) -> (u64, u64) {
        (self.beta1, self.beta2)
    }

    /// `β' = β1 / h(α2) + β2 / h(α1)`.
    pub fn beta_prime(&self) -> f64 {
        let h1 = log_height(self.alpha1).expect("validated");
        let h2 = log_height(self.alpha2).expect("validated");
        self.beta1 as f64 / h2 + self.beta2 as f64 / h1
    }

    /// Double-precision value of `Λ`; loses relative accuracy when `|Λ|` is tiny.
    pub fn value(&self) -> f64 {
        let ln = |r: Ratio<u64>| (*r.numer() as f64).ln() - (*r.denom() as f64).ln();
        self.beta2 as f64 * ln(self.alpha2) - self.beta1 as f64 * ln(self.alpha1)
    }
}

/// Lower bound for `log |Λ|`:
/// `−25.2 h(α1) h(α2) max{log β' + 0.38, 10}²`.
pub fn laurent_lower(lf: &LinearForm) -> f64 {
    let h1 = log_height(lf.alpha1).expect("validated");
    let h2 = log_height(lf.alpha2).expect("validated");
    let factor = *LAURENT_FACTOR.numer() as f64 / *LAURENT_FACTOR.denom() as f64;
    let t = (lf.beta_prime().ln() + LAURENT_SHIFT).max(LAURENT_FLOOR);
    -factor * h1 * h2 * t * t
}

/// The linear form `z log C − x log A` attached to a candidate of the family.
pub fn family_form(inst: Instance, e: ExponentTriple) -> Result<LinearForm> {
    let (a, _, c) = inst.terms_u64();
    LinearForm::integers(c, a, e.z as u64, e.x as u64)
}

/// Upper bound `−(1/2) x log A` for `log Λ`, valid when `Λ > 0` and `(2m)^y < A^(x/2)`.
pub fn lambda_upper(inst: Instance, e: ExponentTriple) -> Result<f64> {
    lambda_upper_with(inst, e, 2)
}

/// Generalised form: if `(2m)^(d y) < A^x` then `Λ < A^(−(d−1)x/d)`, so
/// `log Λ < −((d−1)/d) x log A`. Both preconditions are checked exactly.
pub fn lambda_upper_with(inst: Instance, e: ExponentTriple, d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::Precondition(format!("exponent denominator must be >= 2, got {d}")));
    }
    let (a, b, c) = inst.terms();
    if cmp_pow(&c, e.z, &a, e.x) != Ordering::Greater {
        return Err(Error::Precondition(format!("Λ = z log C − x log A is not positive for {:?}, {:?}", inst, e)));
    }
    let dy = e.y.checked_mul(d).ok_or_else(|| Error::Precondition("d*y overflows".into()))?;
    if cmp_pow(&b, dy, &a, e.x) != Ordering::Less {
        return Err(Error::Precondition(format!("(2m)^({d}y) < A^x fails for {:?}, {:?}", inst, e)));
    }
    let a_u = inst.terms_u64().0;
    Ok(-((d - 1) as f64 / d as f64) * e.x as f64 * (a_u as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(a: u64, m: u64) -> Instance {
        Instance::new(a, m).unwrap()
    }

    fn ex(x: u32, y: u32, z: u32) -> ExponentTriple {
        ExponentTriple::new(x, y, z).unwrap()
    }

    #[test]
    fn heights() {
        assert!((log_height(Ratio::from_integer(5)).unwrap() - 1.6094379).abs() < 1e-6);
        assert_eq!(log_height(Ratio::from_integer(1)).unwrap(), 0.0);
        assert!((log_height(Ratio::new(3, 2)).unwrap() - 1.0986123).abs() < 1e-6);
        // Lowest terms are taken: 6/4 = 3/2.
        assert_eq!(log_height(Ratio::new(6, 4)).unwrap(), log_height(Ratio::new(3, 2)).unwrap());
        assert!(log_height(Ratio::from_integer(0)).is_err());
    }

    #[test]
    fn independence() {
        assert!(!mult_indep(2, 4));
        assert!(mult_indep(3, 5));
        assert!(mult_indep(6, 12));
        assert!(!mult_indep(8, 32));
        assert!(!mult_indep(36, 216));
        assert!(!independent(Ratio::new(9, 4), Ratio::new(27, 8)));
        assert!(independent(Ratio::new(3, 2), Ratio::from_integer(3)));
    }

    #[test]
    fn form_validation() {
        assert!(LinearForm::integers(2, 4, 1, 1).is_err());
        assert!(LinearForm::integers(1, 4, 1, 1).is_err());
        assert!(LinearForm::integers(3, 5, 0, 1).is_err());
    }

    #[test]
    fn laurent_examples() {
        let expect = -25.2 * 3f64.ln() * 5f64.ln() * 100.0;
        let lf = LinearForm::integers(3, 5, 3, 2).unwrap();
        assert!((lf.beta_prime() - 3.684).abs() < 1e-3);
        assert!((laurent_lower(&lf) - expect).abs() < 1e-9);
        assert!((laurent_lower(&lf) + 4455.8).abs() < 0.1);
        // log|2 log 5 − 3 log 3| ≈ −2.565 sits above the bound.
        assert!((lf.value().abs().ln() + 2.5645).abs() < 1e-3);
        let lf = LinearForm::integers(3, 5, 1, 1).unwrap();
        assert!((laurent_lower(&lf) - expect).abs() < 1e-9);
    }

    #[test]
    fn laurent_leaves_saturation_above_threshold() {
        // log β' + 0.38 = 10 at β' = e^9.62 ≈ 15063.
        let threshold = (9.62f64).exp();
        assert!((threshold - 15063.0).abs() < 5.0);
        let lf = LinearForm::integers(3, 5, 40_000, 40_000).unwrap();
        let bp = lf.beta_prime();
        assert!(bp > threshold);
        let t = bp.ln() + 0.38;
        let expect = -25.2 * 3f64.ln() * 5f64.ln() * t * t;
        assert!((laurent_lower(&lf) - expect).abs() < 1e-6);
        assert!(laurent_lower(&lf) < -25.2 * 3f64.ln() * 5f64.ln() * 100.0);
    }

    #[test]
    fn lambda_upper_examples() {
        // (a, m) = (2, 2): A = 9, C = 7, B = 4. With z = 13, 7^13 < 9^12 so Λ < 0.
        assert!(lambda_upper(inst(2, 2), ex(12, 2, 13)).is_err());
        let v = lambda_upper(inst(2, 2), ex(12, 2, 14)).unwrap();
        assert!((v + 6.0 * 9f64.ln()).abs() < 1e-12);
        assert!((v + 13.18).abs() < 0.01);
        // 4^6 = 4096 > 9: the second precondition fails.
        assert!(lambda_upper(inst(2, 2), ex(2, 6, 3)).is_err());
    }

    #[test]
    fn lambda_upper_generalised() {
        // (2m)^(1953 y) = 4^1953 < 9^x needs x > 1953 log 4 / log 9 ≈ 1232.2.
        let x = 1233;
        let z = (x as f64 * 9f64.ln() / 7f64.ln()).ceil() as u32;
        let v = lambda_upper_with(inst(2, 2), ex(x, 1, z), 1953).unwrap();
        assert!((v + 1952.0 / 1953.0 * x as f64 * 9f64.ln()).abs() < 1e-9);
        assert!(lambda_upper_with(inst(2, 2), ex(1232, 1, z), 1953).is_err());
    }
}
