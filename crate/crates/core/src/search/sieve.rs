//! Reject candidates by testing `A^x + B^y ≡ C^z (mod p)` for small primes.

use crate::arith::{modpow_u64, primes_below};
use crate::model::Instance;

/// Number of primes each sieve uses.
pub const SIEVE_PRIMES: usize = 25;

/// The first [`SIEVE_PRIMES`] primes not dividing `2am (4a²m² − 1)`, with the
/// bases reduced modulo each.
#[derive(Debug, Clone)]
pub struct ModularSieve {
    primes: Vec<u64>,
    a_mod: Vec<u64>,
    b_mod: Vec<u64>,
    c_mod: Vec<u64>,
    a_sq_mod: Vec<u64>,
}

impl ModularSieve {
    pub fn new(inst: Instance) -> Self {
        let (a, b, c) = inst.terms_u64();
        let two_am = a - 1;
        let primes: Vec<u64> = primes_below(1000)
            .into_iter()
            .filter(|&p| two_am % p != 0 && a % p != 0 && c % p != 0)
            .take(SIEVE_PRIMES)
            .collect();
        assert_eq!(primes.len(), SIEVE_PRIMES, "not enough small primes below 1000");
        let reduce = |v: u64| primes.iter().map(|&p| v % p).collect::<Vec<_>>();
        let (a_mod, b_mod, c_mod) = (reduce(a), reduce(b), reduce(c));
        let a_sq_mod = a_mod.iter().zip(&primes).map(|(&r, &p)| r * r % p).collect();
        Self { primes, a_mod, b_mod, c_mod, a_sq_mod }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `B^y mod p` for each prime.
    pub fn b_residues(&self, y: u32) -> Vec<u64> {
        self.primes.iter().zip(&self.b_mod).map(|(&p, &b)| modpow_u64(b, y as u64, p)).collect()
    }

    /// `A^x mod p` for each prime.
    pub fn a_residues(&self, x: u32) -> Vec<u64> {
        self.primes.iter().zip(&self.a_mod).map(|(&p, &a)| modpow_u64(a, x as u64, p)).collect()
    }

    /// Turn `A^x` residues into `A^(x+2)` residues.
    pub fn advance_by_two(&self, residues: &mut [u64]) {
        for ((r, &p), &a2) in residues.iter_mut().zip(&self.primes).zip(&self.a_sq_mod) {
            *r = *r * a2 % p;
        }
    }

    /// Index of the first prime witnessing `A^x + B^y ≢ C^z`, or `None` if every
    /// prime is consistent with equality.
    pub fn reject(&self, a_res: &[u64], b_res: &[u64], z: u32) -> Option<usize> {
        (0..self.primes.len()).find(|&i| {
            let p = self.primes[i];
            (a_res[i] + b_res[i]) % p != modpow_u64(self.c_mod[i], z as u64, p)
        })
    }

    /// [`reject`](Self::reject) from scratch.
    pub fn rejects(&self, x: u32, y: u32, z: u32) -> bool {
        self.reject(&self.a_residues(x), &self.b_residues(y), z).is_some()
    }
}
