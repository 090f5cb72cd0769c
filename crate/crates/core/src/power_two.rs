//! The case `m = 2^k`: Fermat numbers, the unique odd preimage and `A(2^k)`.
//!
//! An odd `n` with φ(n) = 2^k must be a product of distinct Fermat primes,
//! and the Fermat indices used are exactly the set bits of `k`. So there is at
//! most one odd solution, `Π_{bit i of k} F_i`, and it exists only when every
//! such `F_i` is prime.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::checked_mul;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FermatStatus {
    Prime,
    Composite,
    Unknown,
}

impl fmt::Display for FermatStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FermatStatus::Prime => "prime",
            FermatStatus::Composite => "composite",
            FermatStatus::Unknown => "unknown",
        })
    }
}

impl FromStr for FermatStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" => Ok(FermatStatus::Prime),
            "composite" => Ok(FermatStatus::Composite),
            "unknown" => Ok(FermatStatus::Unknown),
            other => Err(Error::Format(format!("unknown Fermat status {other:?}"))),
        }
    }
}

/// Highest index whose status is known by default (F_5 ..= F_32 composite).
const DEFAULT_LAST_COMPOSITE: u32 = 32;

/// Primality status of the Fermat numbers `F_i = 2^(2^i) + 1`.
///
/// Defaults: prime for `i ≤ 4`, composite for `5 ≤ i ≤ 32`, unknown beyond.
/// Overrides replace individual entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FermatStatusTable {
    overrides: BTreeMap<u32, FermatStatus>,
}

impl FermatStatusTable {
    pub fn with_overrides(overrides: impl IntoIterator<Item = (u32, FermatStatus)>) -> Self {
        FermatStatusTable {
            overrides: overrides.into_iter().collect(),
        }
    }

    pub fn status(&self, i: u32) -> FermatStatus {
        if let Some(&s) = self.overrides.get(&i) {
            return s;
        }
        match i {
            0..=4 => FermatStatus::Prime,
            5..=DEFAULT_LAST_COMPOSITE => FermatStatus::Composite,
            _ => FermatStatus::Unknown,
        }
    }

    /// Parses override lines of the form `i prime|composite|unknown`. Blank
    /// lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut overrides = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Format(format!("line {}: expected `index status`, got {raw:?}", lineno + 1));
            let mut parts = line.split_whitespace();
            let index: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let status: FermatStatus = parts.next().ok_or_else(bad)?.parse()?;
            if parts.next().is_some() {
                return Err(bad());
            }
            overrides.insert(index, status);
        }
        Ok(FermatStatusTable { overrides })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// SHA-256 over the effective statuses of `F_0 ..= F_64` and every
    /// override, so equal tables hash equally however they were written.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        let last = self.overrides.keys().next_back().copied().unwrap_or(0).max(64);
        for i in 0..=last {
            h.update(format!("{i} {}\n", self.status(i)));
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `F_i = 2^(2^i) + 1`; only `i ≤ 5` fits.
pub fn fermat_number(i: u32) -> Result<u64> {
    if i > 5 {
        return Err(Error::Overflow("Fermat number"));
    }
    Ok((1u64 << (1u32 << i)) + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddPreimageResult {
    pub k: u32,
    pub exists: bool,
    pub witness: Option<u64>,
    /// Least set bit `i` of `k` whose `F_i` is composite.
    pub blocking_index: Option<u32>,
    pub undetermined: bool,
}

fn set_bits(k: u32) -> impl Iterator<Item = u32> {
    (0..u32::BITS).filter(move |i| k >> i & 1 == 1)
}

fn check_exponent(k: u32) -> Result<()> {
    if k > 62 {
        return Err(Error::Overflow("2^k"));
    }
    Ok(())
}

/// The odd solution of φ(n) = 2^k, if any.
pub fn odd_preimage_of_power_two(k: u32, table: &FermatStatusTable) -> Result<OddPreimageResult> {
    check_exponent(k)?;
    let mut result = OddPreimageResult {
        k,
        exists: false,
        witness: None,
        blocking_index: None,
        undetermined: false,
    };

    if let Some(i) = set_bits(k).find(|&i| table.status(i) == FermatStatus::Composite) {
        result.blocking_index = Some(i);
        return Ok(result);
    }
    if set_bits(k).any(|i| table.status(i) == FermatStatus::Unknown) {
        result.undetermined = true;
        return Ok(result);
    }

    let mut witness = 1u64;
    for i in set_bits(k) {
        witness = checked_mul(witness, fermat_number(i)?)?;
    }
    result.exists = true;
    result.witness = Some(witness);
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OddCount {
    Zero,
    One,
    Undetermined,
}

impl OddCount {
    pub fn as_count(&self) -> Option<u64> {
        match self {
            OddCount::Zero => Some(0),
            OddCount::One => Some(1),
            OddCount::Undetermined => None,
        }
    }
}

/// `O(2^k)`, which is always 0 or 1.
pub fn odd_count_of_power_two(k: u32, table: &FermatStatusTable) -> Result<OddCount> {
    let r = odd_preimage_of_power_two(k, table)?;
    Ok(if r.undetermined {
        OddCount::Undetermined
    } else if r.exists {
        OddCount::One
    } else {
        OddCount::Zero
    })
}

/// `A(2^k) = 2^(k+1) · Π F_i/(F_i - 1)` over prime `F_i` with `2^i ≤ k`.
pub fn gupta_bound_power_two(k: u32, table: &FermatStatusTable) -> Result<Rational> {
    check_exponent(k)?;
    let mut value = Rational::integer(1 << k).scale(2, 1);
    let mut i = 0u32;
    while k >= 1 << i {
        match table.status(i) {
            FermatStatus::Prime => {
                let f = fermat_number(i)?;
                value = value.scale(f, f - 1);
            }
            FermatStatus::Composite => {}
            FermatStatus::Unknown => return Err(Error::UndeterminedFermat(i)),
        }
        i += 1;
    }
    Ok(value)
}
