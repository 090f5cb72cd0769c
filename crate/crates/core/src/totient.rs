//! Euler's totient and the shortcuts that follow from multiplicativity.

use crate::arith::{check_nat, checked_mul, checked_pow, factorize, gcd, is_prime, Factorization};
use crate::error::{Error, Result};

/// φ(n) via the product `Π p^(α-1) (p-1)` over the factorization of `n`.
pub fn phi(n: u64) -> Result<u64> {
    Ok(phi_of(&factorize(n)?))
}

/// φ from an existing factorization. Never overflows since φ(n) ≤ n.
pub fn phi_of(f: &Factorization) -> u64 {
    f.factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// φ(p^α) = p^(α-1) (p - 1).
pub fn phi_of_prime_power(p: u64, alpha: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha == 0 {
        return Err(Error::Precondition("exponent must be at least 1".into()));
    }
    checked_mul(checked_pow(p, alpha - 1)?, p - 1)
}

/// φ(p·m) from φ(m): `(p-1)·φ(m)` when `p ∤ m`, otherwise `p·φ(m)`.
pub fn phi_prime_multiple(p: u64, m: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_nat(m)?;
    checked_mul(p, m)?;
    let base = phi(m)?;
    if gcd(p, m) == 1 {
        checked_mul(p - 1, base)
    } else {
        checked_mul(p, base)
    }
}

/// φ(2m); equal to φ(m) exactly when `m` is odd.
pub fn phi_double(m: u64) -> Result<u64> {
    if m % 2 == 1 {
        checked_mul(2, m)?;
        phi(m)
    } else {
        phi_prime_multiple(2, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd_count(n: u64) -> u64 {
        (1..=n).filter(|&x| gcd(x, n) == 1).count() as u64
    }

    #[test]
    fn small_values() {
        let got: Vec<u64> = (1..=4).map(|n| phi(n).unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 2]);
        assert_eq!(phi(81).unwrap(), 54);
        assert_eq!(phi(12).unwrap(), 4);
        assert_eq!(phi(0), Err(Error::OutOfRange(0)));
    }

    #[test]
    fn prime_powers() {
        for k in 1..=62 {
            assert_eq!(phi_of_prime_power(2, k).unwrap(), 1 << (k - 1));
        }
        for p in [2u64, 3, 5, 47, 65_537] {
            assert_eq!(phi_of_prime_power(p, 1).unwrap(), p - 1);
        }
        assert_eq!(phi_of_prime_power(3, 4).unwrap(), 54);
        assert_eq!(phi_of_prime_power(4, 2), Err(Error::NotPrime(4)));
        assert!(phi_of_prime_power(3, 41).is_err());
    }

    #[test]
    fn prime_multiple_examples() {
        assert_eq!(phi_prime_multiple(2, 7).unwrap(), gcd_count(14));
        assert_eq!(phi_prime_multiple(2, 7).unwrap(), 6);
        assert_eq!(phi_prime_multiple(3, 9).unwrap(), 18);
        assert_eq!(phi_prime_multiple(2, 6).unwrap(), 4);
        assert_eq!(phi_prime_multiple(9, 6), Err(Error::NotPrime(9)));
    }

    #[test]
    fn double_examples() {
        assert_eq!(phi_double(15).unwrap(), 8);
        assert_eq!(phi_double(2).unwrap(), 2);
        // φ(42) = 1·2·6
        assert_eq!(phi_double(21).unwrap(), gcd_count(42));
        assert_eq!(phi_double(21).unwrap(), 12);
    }

    #[test]
    fn matches_gcd_count() {
        for n in 1..=5000 {
            assert_eq!(phi(n).unwrap(), gcd_count(n), "n = {n}");
        }
    }

    #[test]
    fn multiplicative_on_coprime_pairs() {
        for m in 1..=300u64 {
            for n in 1..=300u64 {
                if gcd(m, n) == 1 {
                    assert_eq!(phi(m * n).unwrap(), phi(m).unwrap() * phi(n).unwrap());
                }
            }
        }
    }

    #[test]
    fn prime_multiple_agrees_with_phi() {
        for p in (2..=97).filter(|&p| is_prime(p)) {
            for m in 1..=1000 {
                assert_eq!(phi_prime_multiple(p, m).unwrap(), phi(p * m).unwrap());
            }
        }
    }

    #[test]
    fn doubling_fixes_phi_iff_odd() {
        for m in 1..=10_000u64 {
            let same = phi(2 * m).unwrap() == phi(m).unwrap();
            assert_eq!(same, m % 2 == 1, "m = {m}");
            assert_eq!(phi_double(m).unwrap(), phi(2 * m).unwrap());
        }
    }

    #[test]
    fn even_from_three_on() {
        for n in 3..=100_000 {
            assert_eq!(phi(n).unwrap() % 2, 0);
        }
        for n in 2..=10_000 {
            assert!(phi(n).unwrap() < n);
        }
    }

    #[test]
    fn prime_divisor_minus_one_divides_phi() {
        let primes: Vec<u64> = (2..=1000).filter(|&p| is_prime(p)).collect();
        for n in 2..=5000u64 {
            let v = phi(n).unwrap();
            for &p in primes.iter().filter(|&&p| n % p == 0) {
                assert_eq!(v % (p - 1), 0);
            }
        }
    }
}
