//! Exact verification machinery for the exponential Diophantine family
//!
//! ```text
//! (2am + 1)^x + (2m)^y = (2am - 1)^z,   a > 1, m, x, y, z >= 1
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] exact big-integer primitives (powers, valuations, power-sum comparison);
//! * [`model`] instances, exponent triples, verified solutions and the `P`/`Q` split;
//! * [`filters`] congruence and valuation eliminations with auditable verdicts;
//! * [`bounds`] heights, the two-logarithm lower bound and the bound cascade that
//!   yields a finite search region;
//! * [`search`] the brute-force oracle, the finite region search with checkpointing,
//!   the `b^x + 2^y = (b-2)^z` search and verifiers for the auxiliary equations.

pub mod arith;
pub mod bounds;
mod error;
pub mod filters;
pub mod model;
pub mod search;

pub use error::{Error, Result};

pub use arith::{cmp_powersum, ipow, modpow, vp};
pub use bounds::{build_bound_set, BoundSet};
pub use model::{check_family, check_generic, ExponentTriple, Instance, PowerSumEquation, Solution};
pub use num_bigint::{BigInt, BigUint};
