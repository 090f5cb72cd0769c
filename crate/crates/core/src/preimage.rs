//! Gupta's bound `A(m) = m · Π_{p prime, (p-1) | m} p/(p-1)` and the inverse
//! image φ⁻¹(m), found by scanning the interval `(m, ⌊A(m)⌋]`.
//!
//! `A` is defined on `{1} ∪ 2ℕ*`. The strict lower bound `m < n` fails only
//! for `m = 1` (φ(1) = 1), so φ⁻¹(1) = {1, 2} is returned directly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{check_nat, divisors, is_prime};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::totient::phi;

const SCAN_CHUNK: u64 = 1 << 14;

/// Beyond this trial divisor the membership test falls back to a full φ.
const EARLY_EXIT_TRIAL_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuptaBound {
    pub m: u64,
    pub value: Rational,
    pub floor: u64,
    /// Primes `p` with `(p - 1) | m`, ascending.
    pub contributing_primes: Vec<u64>,
}

impl GuptaBound {
    /// Whether `n` satisfies `m < n ≤ A(m)`, compared exactly.
    pub fn admits(&self, n: u64) -> bool {
        n > self.m && self.value.cmp_integer(n).is_ge()
    }
}

pub fn gupta_bound(m: u64) -> Result<GuptaBound> {
    check_nat(m)?;
    if m > 1 && m % 2 == 1 {
        return Err(Error::OddArgument(m));
    }
    let contributing_primes: Vec<u64> = divisors(m)?
        .into_iter()
        .map(|d| d + 1)
        .filter(|&p| is_prime(p))
        .collect();
    let mut value = Rational::integer(m);
    for &p in &contributing_primes {
        value = value.scale(p, p - 1);
    }
    Ok(GuptaBound {
        m,
        floor: value.floor()?,
        value,
        contributing_primes,
    })
}

/// A complete inverse image, split by parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageSet {
    pub m: u64,
    pub members: Vec<u64>,
    pub odd_members: Vec<u64>,
    pub even_members: Vec<u64>,
}

impl PreimageSet {
    pub fn from_members(m: u64, mut members: Vec<u64>) -> Self {
        members.sort_unstable();
        members.dedup();
        let (odd_members, even_members) = members.iter().partition(|&&n| n % 2 == 1);
        PreimageSet {
            m,
            members,
            odd_members,
            even_members,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// `(O(m), E(m))`.
    pub fn parity_counts(&self) -> (u64, u64) {
        (self.odd_members.len() as u64, self.even_members.len() as u64)
    }
}

/// Tests φ(n) = target, abandoning the factorization as soon as a prime power
/// contributes a factor that does not divide what is left of the target.
fn phi_equals(n: u64, target: u64) -> bool {
    let mut rest = n;
    let mut left = target;

    let tz = rest.trailing_zeros();
    if tz > 0 {
        let part = 1u64 << (tz - 1);
        if left % part != 0 {
            return false;
        }
        left /= part;
        rest >>= tz;
    }

    let mut p = 3u64;
    while p * p <= rest {
        if rest > 1 && left % 2 == 1 {
            // φ of an odd number above 1 is even
            return false;
        }
        if p > EARLY_EXIT_TRIAL_LIMIT {
            return phi(n) == Ok(target);
        }
        if rest % p == 0 {
            rest /= p;
            let mut part = p - 1;
            while rest % p == 0 {
                rest /= p;
                part *= p;
            }
            if left % part != 0 {
                return false;
            }
            left /= part;
        }
        p += 2;
    }
    if rest > 1 {
        left == rest - 1
    } else {
        left == 1
    }
}

fn scan(m: u64, lo: u64, hi: u64) -> Vec<u64> {
    if lo > hi {
        return Vec::new();
    }
    let chunks = (hi - lo) / SCAN_CHUNK + 1;
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let start = lo + c * SCAN_CHUNK;
            let end = (start + SCAN_CHUNK - 1).min(hi);
            (start..=end).filter(move |&n| phi_equals(n, m))
        })
        .collect()
}

/// φ⁻¹(m). Empty for odd `m > 1`.
pub fn preimage(m: u64) -> Result<PreimageSet> {
    check_nat(m)?;
    if m == 1 {
        return Ok(PreimageSet::from_members(1, vec![1, 2]));
    }
    if m % 2 == 1 {
        return Ok(PreimageSet::from_members(m, Vec::new()));
    }
    let bound = gupta_bound(m)?;
    Ok(PreimageSet::from_members(m, scan(m, m + 1, bound.floor)))
}

/// `(O(m), E(m))`, the number of odd and even solutions of φ(n) = m.
pub fn parity_counts(m: u64) -> Result<(u64, u64)> {
    Ok(preimage(m)?.parity_counts())
}

/// `A(m)/2`, an upper bound on every odd member of φ⁻¹(m).
pub fn odd_member_bound(m: u64) -> Result<Rational> {
    Ok(gupta_bound(m)?.value.half())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: u64,
    pub a: Rational,
    /// φ(A(m)), absent when A(m) is not an integer.
    pub phi_of_a: Option<u64>,
}

pub const TABLE_ARGUMENTS: [u64; 8] = [1, 2, 4, 6, 8, 10, 12, 14];

/// `m`, `A(m)` and φ(A(m)) for the first values of `A`.
pub fn gupta_table() -> Result<Vec<TableRow>> {
    TABLE_ARGUMENTS
        .iter()
        .map(|&m| {
            let a = gupta_bound(m)?.value;
            let phi_of_a = a.to_u64().map(phi).transpose()?;
            Ok(TableRow { m, a, phi_of_a })
        })
        .collect()
}
