//! Euler's totient φ and its inverse images.
//!
//! * [`arith`]: gcd, deterministic primality, factorization, divisors.
//! * [`totient`]: φ and the identities φ(pm), φ(2m).
//! * [`preimage`]: Gupta's bound `A(m)` as an exact [`Rational`] and φ⁻¹(m).
//! * [`classify`]: whether `2p` is a totient; Sophie Germain families.
//! * [`power_two`]: Fermat numbers and the odd solutions of φ(n) = 2^k.
//! * [`multiplicity`]: totient sieve, multiplicity counts, Carmichael and Ford scans.

pub mod arith;
pub mod classify;
pub mod error;
pub mod multiplicity;
pub mod power_two;
pub mod preimage;
pub mod rational;
pub mod totient;

pub use error::{Error, Result};
pub use rational::Rational;
