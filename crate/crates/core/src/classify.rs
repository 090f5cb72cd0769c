//! Membership of `2p` in the image of φ for prime `p`, and the infinite
//! families built from it.
//!
//! For prime `p`, `2p` is a totient exactly when `2p + 1` is prime, and then
//! `2p + 1` itself is a witness. When `2p + 1` is prime every `2^k · p` is a
//! totient as well, through `φ(2^k (2p + 1)) = 2^k p`.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_mul, is_prime};
use crate::error::{Error, Result};
use crate::preimage::PreimageSet;
use crate::totient::phi;

pub fn is_sophie_germain(p: u64) -> bool {
    is_prime(p) && p.checked_mul(2).and_then(|d| d.checked_add(1)).is_some_and(is_prime)
}

pub fn is_safe_prime(q: u64) -> bool {
    q % 2 == 1 && is_prime(q) && is_prime((q - 1) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwicePrimeVerdict {
    pub p: u64,
    pub in_image: bool,
    /// `n` with φ(n) = 2p.
    pub witness: Option<u64>,
    pub safe_prime: Option<u64>,
}

/// Decides whether `2p` is a totient. Composite `p` is an error.
pub fn classify_twice_prime(p: u64) -> Result<TwicePrimeVerdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let candidate = checked_mul(2, p)?
        .checked_add(1)
        .ok_or(Error::Overflow("2p + 1"))?;
    let in_image = is_prime(candidate);
    let safe = in_image.then_some(candidate);
    Ok(TwicePrimeVerdict {
        p,
        in_image,
        witness: safe,
        safe_prime: safe,
    })
}

fn require_sophie_germain(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_sophie_germain(p) {
        return Err(Error::Precondition(format!("2*{p}+1 is not prime")));
    }
    Ok(2 * p + 1)
}

/// φ⁻¹(2p) = {2p+1, 4p+2} for Sophie Germain primes `p ≥ 5`, without scanning.
pub fn preimage_2p_exact(p: u64) -> Result<PreimageSet> {
    if p < 5 {
        return Err(Error::Precondition(format!(
            "p = {p} is below 5; φ⁻¹(2p) is not a pair there"
        )));
    }
    let safe = require_sophie_germain(p)?;
    let double = checked_mul(2, safe)?;
    Ok(PreimageSet::from_members(2 * p, vec![safe, double]))
}

/// `(A(2p), φ(A(2p))) = (6p + 3, 4p)` for an odd Sophie Germain prime `p`.
pub fn bound_2p(p: u64) -> Result<(u64, u64)> {
    if p == 2 {
        return Err(Error::Precondition("p must be odd".into()));
    }
    let safe = require_sophie_germain(p)?;
    let a = checked_mul(3, safe)?;
    Ok((a, checked_mul(4, p)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerTwoMultiple {
    pub k: u32,
    pub n: u64,
    /// `2^k · p`, which equals φ(n).
    pub value: u64,
}

/// `n = 2^k (2p + 1)` with φ(n) = `2^k p` for `k` in `1..=k_max`.
pub fn power_two_multiples(p: u64, k_max: u32) -> Result<Vec<PowerTwoMultiple>> {
    if k_max == 0 {
        return Err(Error::Precondition("k_max must be at least 1".into()));
    }
    let safe = require_sophie_germain(p)?;
    let mut out = Vec::with_capacity(k_max as usize);
    let (mut n, mut value) = (safe, p);
    for k in 1..=k_max {
        n = checked_mul(n, 2)?;
        value = checked_mul(value, 2)?;
        out.push(PowerTwoMultiple { k, n, value });
    }
    Ok(out)
}

/// A prime `q = (p-1)/2 + k·p` with `2q + 1 = p(1 + 2k)`, so `2q` is not a totient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpMember {
    pub p: u64,
    pub q: u64,
    pub k: u64,
}

impl SpMember {
    /// The nontotient `2q`, congruent to -1 mod `p`.
    pub fn nontotient(&self) -> u64 {
        2 * self.q
    }
}

/// First `count` members of `S(p)` by ascending `k ≥ 1`.
///
/// `k = 0` is skipped: it gives `2q + 1 = p`, which is prime.
pub fn sp_generate(p: u64, count: usize) -> Result<Vec<SpMember>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let offset = (p - 1) / 2;
    let mut out = Vec::with_capacity(count);
    let mut k = 1u64;
    while out.len() < count {
        let q = checked_mul(k, p)?
            .checked_add(offset)
            .ok_or(Error::Overflow("q"))?;
        if is_prime(q) {
            let verdict = classify_twice_prime(q)?;
            debug_assert!(!verdict.in_image);
            debug_assert_eq!((2 * q + 1) % p, 0);
            if !verdict.in_image {
                out.push(SpMember { p, q, k });
            }
        }
        k += 1;
    }
    Ok(out)
}

/// First `count` primes `p ≡ 3 (mod 4)` with `s = (p-1)/2`, odd, so that `2s = φ(p)`.
pub fn odd_s_witnesses(count: usize) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::with_capacity(count);
    let mut p = 3u64;
    while out.len() < count {
        if is_prime(p) {
            let s = (p - 1) / 2;
            debug_assert_eq!(phi(p)?, 2 * s);
            out.push((p, s));
        }
        p = p.checked_add(4).ok_or(Error::Overflow("p"))?;
    }
    Ok(out)
}
