//! Integer primitives over the naturals `1..=2^63-1`: gcd, deterministic
//! primality, factorization and divisor lists.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest value accepted by public operations.
pub const NAT_MAX: u64 = (1 << 63) - 1;

/// Trial division runs up to this bound before Pollard-rho takes over. Any
/// cofactor below its square left after trial division is prime.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Rejects 0 and values above [`NAT_MAX`].
pub fn check_nat(n: u64) -> Result<u64> {
    if n == 0 || n > NAT_MAX {
        Err(Error::OutOfRange(n))
    } else {
        Ok(n)
    }
}

/// Multiplication that reports results above [`NAT_MAX`] instead of wrapping.
pub fn checked_mul(a: u64, b: u64) -> Result<u64> {
    match a.checked_mul(b) {
        Some(v) if v <= NAT_MAX => Ok(v),
        _ => Err(Error::Overflow("product")),
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = checked_mul(acc, base)?;
    }
    Ok(acc)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Witness sets that make Miller-Rabin deterministic below each bound.
fn witnesses(n: u64) -> &'static [u64] {
    match n {
        0..=2_046 => &[2],
        2_047..=1_373_652 => &[2, 3],
        1_373_653..=25_326_000 => &[2, 3, 5],
        25_326_001..=3_215_031_750 => &[2, 3, 5, 7],
        3_215_031_751..=3_474_749_660_382 => &[2, 3, 5, 7, 11, 13],
        3_474_749_660_383..=341_550_071_728_320 => &[2, 3, 5, 7, 11, 13, 17],
        341_550_071_728_321..=3_825_123_056_546_413_050 => &[2, 3, 5, 7, 11, 13, 17, 19, 23],
        _ => &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37],
    }
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }

    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;

    'witness: for &a in witnesses(n) {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Canonical prime factorization: `(prime, exponent)` pairs with strictly
/// increasing primes. The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Rebuilds the factored integer.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product()
    }

    /// `Π (α_i + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    check_nat(n)?;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;

    let strip = |p: u64, rest: &mut u64, factors: &mut Vec<(u64, u32)>| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };

    strip(2, &mut rest, &mut factors);
    strip(3, &mut rest, &mut factors);

    // 6k ± 1 wheel
    let mut p = 5u64;
    while p <= TRIAL_LIMIT && p * p <= rest {
        strip(p, &mut rest, &mut factors);
        strip(p + 2, &mut rest, &mut factors);
        p += 6;
    }

    if rest > 1 {
        if rest < TRIAL_LIMIT * TRIAL_LIMIT || p * p > rest || is_prime(rest) {
            factors.push((rest, 1));
        } else {
            let mut big = Vec::new();
            split_composite(rest, &mut big);
            big.sort_unstable();
            for q in big {
                match factors.last_mut() {
                    Some((last, e)) if *last == q => *e += 1,
                    _ => factors.push((q, 1)),
                }
            }
        }
    }

    Ok(Factorization { factors })
}

/// Pushes the prime factors (with repetition) of a composite `n` that has no
/// prime factor below the trial-division limit.
fn split_composite(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_composite(d, out);
    split_composite(n / d, out);
}

/// Pollard's rho with Brent's cycle detection; returns a nontrivial factor of
/// the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let isqrt = (n as f64).sqrt() as u64;
    for cand in [isqrt.saturating_sub(1), isqrt, isqrt + 1] {
        if cand > 1 && cand.checked_mul(cand) == Some(n) {
            return cand;
        }
    }

    const BATCH: u64 = 128;
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;

        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }

        if g == n {
            // the batch overshot; replay it one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho always finds a factor for some increment")
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(divisors_of(&factorize(n)?))
}

pub fn divisors_of(f: &Factorization) -> Vec<u64> {
    let mut divs = Vec::with_capacity(f.divisor_count() as usize);
    divs.push(1u64);
    for &(p, e) in f.factors() {
        let current = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..current {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}
