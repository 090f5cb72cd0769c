//! Bulk totients by linear sieve, and multiplicity counts `|φ⁻¹(m)|` read off
//! the sieve.
//!
//! A count from a sieve of limit `N` is only complete when every possible
//! preimage lies below `N`, i.e. when `⌊A(m)⌋ ≤ N`. Every report carries that
//! flag, and the scans refuse to run on a sieve that is too small.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::check_nat;
use crate::error::{Error, Result};
use crate::preimage::{gupta_bound, PreimageSet};

/// Default cap on sieve entries (64-bit cells).
pub const DEFAULT_BUDGET: u64 = 100_000_000;

const MAGIC: &[u8; 4] = b"PHIS";
const FORMAT_VERSION: u8 = 1;
const HEADER_LEN: u64 = 4 + 1 + 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotientSieve {
    limit: u64,
    /// `values[n] = φ(n)` for `1 ≤ n ≤ limit`; `values[0]` is unused.
    values: Vec<u64>,
}

impl TotientSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        if n == 0 || n > self.limit {
            None
        } else {
            Some(self.values[n as usize])
        }
    }

    /// φ(1), φ(2), …, φ(limit).
    pub fn values(&self) -> &[u64] {
        &self.values[1..]
    }

    /// Writes `PHIS`, a version byte, the limit and then φ(1..=limit), all
    /// little-endian.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(MAGIC)?;
        w.write_all(&[FORMAT_VERSION])?;
        w.write_all(&self.limit.to_le_bytes())?;
        for v in self.values() {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>, budget: u64) -> Result<Self> {
        let file = File::open(path)?;
        let file_len = file.metadata()?.len();
        let mut r = BufReader::new(file);

        let mut header = [0u8; HEADER_LEN as usize];
        r.read_exact(&mut header)
            .map_err(|_| Error::Format("sieve dump is truncated".into()))?;
        if &header[..4] != MAGIC {
            return Err(Error::Format("not a sieve dump (bad magic)".into()));
        }
        if header[4] != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported sieve dump version {}", header[4])));
        }
        let limit = u64::from_le_bytes(header[5..].try_into().expect("8 bytes"));
        check_nat(limit).map_err(|_| Error::Format("sieve dump has limit 0".into()))?;
        check_budget(limit, budget)?;
        if limit.checked_mul(8).and_then(|b| b.checked_add(HEADER_LEN)) != Some(file_len) {
            return Err(Error::Format(format!(
                "sieve dump length {file_len} does not match limit {limit}"
            )));
        }

        let mut values = vec![0u64; limit as usize + 1];
        let mut cell = [0u8; 8];
        for v in values.iter_mut().skip(1) {
            r.read_exact(&mut cell)?;
            *v = u64::from_le_bytes(cell);
        }
        if values[1] != 1 {
            return Err(Error::Format("sieve dump does not start with φ(1) = 1".into()));
        }
        Ok(TotientSieve { limit, values })
    }
}

fn check_budget(limit: u64, budget: u64) -> Result<()> {
    if limit > budget {
        return Err(Error::BudgetExceeded {
            requested: limit,
            budget,
        });
    }
    Ok(())
}

pub fn build_sieve(limit: u64) -> Result<TotientSieve> {
    build_sieve_with_budget(limit, DEFAULT_BUDGET)
}

/// Linear sieve over smallest prime factors, filling φ(1..=limit) in O(limit).
pub fn build_sieve_with_budget(limit: u64, budget: u64) -> Result<TotientSieve> {
    check_nat(limit)?;
    check_budget(limit, budget)?;
    if limit > u32::MAX as u64 {
        return Err(Error::BudgetExceeded {
            requested: limit,
            budget: u32::MAX as u64,
        });
    }

    let n = limit as usize;
    let mut values = vec![0u64; n + 1];
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    values[1] = 1;

    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            values[i] = i as u64 - 1;
            primes.push(i as u32);
        }
        let least = spf[i];
        let phi_i = values[i];
        for &p in &primes {
            let j = i * p as usize;
            if p > least || j > n {
                break;
            }
            spf[j] = p;
            values[j] = if p == least {
                phi_i * p as u64
            } else {
                phi_i * (p as u64 - 1)
            };
        }
    }

    Ok(TotientSieve { limit, values })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub m: u64,
    pub count: u64,
    pub members: Vec<u64>,
    /// The sieve reaches `⌊A(m)⌋`, so `members` is all of φ⁻¹(m).
    pub valid: bool,
}

impl MultiplicityReport {
    pub fn to_preimage(&self) -> Option<PreimageSet> {
        self.valid
            .then(|| PreimageSet::from_members(self.m, self.members.clone()))
    }
}

/// Upper end of the interval that can hold φ⁻¹(m): `⌊A(m)⌋` for `m = 1` or even
/// `m`, and `None` for odd `m > 1`, which has no preimage at all.
fn search_ceiling(m: u64) -> Result<Option<u64>> {
    match gupta_bound(m) {
        Ok(b) => Ok(Some(b.floor)),
        Err(Error::OddArgument(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn multiplicity(m: u64, sieve: &TotientSieve) -> Result<MultiplicityReport> {
    let Some(ceiling) = search_ceiling(m)? else {
        return Ok(MultiplicityReport {
            m,
            count: 0,
            members: Vec::new(),
            valid: true,
        });
    };
    let top = ceiling.min(sieve.limit);
    let members: Vec<u64> = (1..=top).filter(|&n| sieve.values[n as usize] == m).collect();
    Ok(MultiplicityReport {
        m,
        count: members.len() as u64,
        members,
        valid: ceiling <= sieve.limit,
    })
}

/// Sieve size needed to certify every count for `m ≤ max_m`: the largest
/// `⌊A(m)⌋` over `m = 1` and even `m ≤ max_m`, computed exactly.
pub fn required_sieve_limit(max_m: u64) -> Result<u64> {
    check_nat(max_m)?;
    let evens = max_m / 2;
    let best = (1..=evens)
        .into_par_iter()
        .map(|h| gupta_bound(2 * h).map(|b| b.floor))
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))?;
    Ok(best.max(gupta_bound(1)?.floor))
}

fn ensure_covers(sieve: &TotientSieve, required: u64) -> Result<()> {
    if sieve.limit < required {
        return Err(Error::InsufficientSieve {
            required,
            limit: sieve.limit,
        });
    }
    Ok(())
}

/// `counts[m]` = number of `n ≤ limit` with φ(n) = m, for `m ≤ max_m`.
pub fn histogram(sieve: &TotientSieve, max_m: u64) -> Vec<u64> {
    let width = max_m as usize + 1;
    sieve
        .values()
        .par_chunks(1 << 16)
        .fold(
            || vec![0u64; width],
            |mut acc, chunk| {
                for &v in chunk {
                    if v <= max_m {
                        acc[v as usize] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Every `m ≤ bound` with exactly one preimage. Carmichael's conjecture says
/// the answer is always empty.
pub fn carmichael_scan(bound: u64, sieve: &TotientSieve) -> Result<Vec<u64>> {
    ensure_covers(sieve, required_sieve_limit(bound)?)?;
    let counts = histogram(sieve, bound);
    Ok((1..=bound).filter(|&m| counts[m as usize] == 1).collect())
}

/// Smallest `m` in `2..=bound` with exactly `k` preimages.
pub fn ford_search(k: u64, bound: u64, sieve: &TotientSieve) -> Result<Option<u64>> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    ensure_covers(sieve, required_sieve_limit(bound)?)?;
    let counts = histogram(sieve, bound);
    Ok((2..=bound).find(|&m| counts[m as usize] == k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityViolation {
    pub s: u64,
    pub odd: u64,
    pub even: u64,
}

/// Checks `O(2s) = E(2s)` for every odd `s` in `3..=s_max` against the sieve.
pub fn parity_balance_suite(s_max: u64, sieve: &TotientSieve) -> Result<Vec<ParityViolation>> {
    let odd_s: Vec<u64> = (3..=s_max).step_by(2).collect();
    let ceilings: Vec<u64> = odd_s
        .par_iter()
        .map(|&s| gupta_bound(2 * s).map(|b| b.floor))
        .collect::<Result<_>>()?;
    if let Some(&required) = ceilings.iter().max() {
        ensure_covers(sieve, required)?;
    }

    let mut violations: Vec<ParityViolation> = odd_s
        .par_iter()
        .zip(ceilings.par_iter())
        .filter_map(|(&s, &ceiling)| {
            let m = 2 * s;
            let (mut odd, mut even) = (0, 0);
            for n in m + 1..=ceiling {
                if sieve.values[n as usize] == m {
                    if n % 2 == 1 {
                        odd += 1;
                    } else {
                        even += 1;
                    }
                }
            }
            (odd != even).then_some(ParityViolation { s, odd, even })
        })
        .collect();
    violations.sort_by_key(|v| v.s);
    Ok(violations)
}
